#pragma once

// Fixed-grid brute-force evaluations of the plane-plane integrals and of G(k).
// They share no code path with the adaptive engine (different coordinates,
// composite Gauss-Legendre grids, amplitude-matrix kernel) and serve as
// oracles in tests and as the workload of the serial/parallel benchmark.
//
// The serial and parallel variants accumulate identical per-row partial sums
// in the same order, so their results agree bit for bit.

#include <vector>

#include "casimir/lifshitz.hpp"

namespace casimir::reference {

enum class Execution { Serial, Parallel };

/// Composite 4-point Gauss-Legendre nodes and weights on [a, b], n a
/// multiple of 4.
struct Grid1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};
Grid1D gauss_legendre_grid(double a, double b, int n);

/// Order 0, 1, 2 gives e, e', e'' in hbar*c*nm^-(3+order). The (xi, k) plane
/// is covered in polar form, kappa on (0, inf) via kappa L = t / (1 - t),
/// with n_kappa x n_angle nodes.
double flat_energy_grid(const lifshitz::CavityConfig& cavity, int order, int n_kappa,
                        int n_angle, Execution exec = Execution::Parallel);

/// G(k) in hbar*c*nm^-5 on an n^3 tensor grid in (xi, |k'|, theta) built from
/// the explicit kernel_b.
double response_G_grid(double k, const lifshitz::CavityConfig& cavity, int n,
                       Execution exec = Execution::Parallel);

}  // namespace casimir::reference
