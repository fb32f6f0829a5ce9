#pragma once

// Internal unit system: lengths in nm, wavenumbers and xi/c in nm^-1,
// energies per area in hbar*c*nm^-3. The physical constant enters only when
// results are converted for output.

namespace casimir::units {

/// hbar * c in J*m (CODATA 2018).
inline constexpr double kHbarC = 3.16152677e-26;

/// One hbar*c*nm^-2 expressed in piconewtons.
inline constexpr double kForcePerHbarCNm2InPn = kHbarC * 1e18 * 1e12;

/// One hbar*c*nm^-3 expressed in J/m^2.
inline constexpr double kEnergyAreaPerHbarCNm3InJm2 = kHbarC * 1e27;

}  // namespace casimir::units
