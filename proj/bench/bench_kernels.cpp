// Serial vs OpenMP timings of the main kernels. Each pair must agree bit for
// bit; a mismatch is reported and makes the exit status nonzero.
//
//   bench_kernels [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include <omp.h>

#include "casimir/lateral.hpp"
#include "casimir/reference.hpp"
#include "casimir/response.hpp"

using namespace casimir;

namespace {

double seconds(const std::function<double()>& fn, int repeats, double& result) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    result = fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

bool compare(const char* name, const std::function<double()>& serial,
             const std::function<double()>& parallel, int repeats) {
  double vs = 0.0, vp = 0.0;
  const double ts = seconds(serial, repeats, vs);
  const double tp = seconds(parallel, repeats, vp);
  const bool same = vs == vp;
  std::printf("%-28s %10.4f %10.4f %8.2fx  %s\n", name, ts, tp, ts / tp,
              same ? "identical" : "MISMATCH");
  return same;
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-28s %10s %10s %9s\n", "kernel", "serial_s", "omp_s", "speedup");

  const lifshitz::CavityConfig cavity{200.0, medium::PlasmaMaterial{136.0}};
  bool ok = true;

  ok &= compare(
      "flat e'' grid 2000x2000",
      [&] { return reference::flat_energy_grid(cavity, 2, 2000, 2000, reference::Execution::Serial); },
      [&] { return reference::flat_energy_grid(cavity, 2, 2000, 2000, reference::Execution::Parallel); },
      repeats);

  ok &= compare(
      "G grid 64^3, k=0.0052",
      [&] { return reference::response_G_grid(0.0052, cavity, 64, reference::Execution::Serial); },
      [&] { return reference::response_G_grid(0.0052, cavity, 64, reference::Execution::Parallel); },
      repeats);

  quad::QuadratureSpec serial_spec;
  quad::QuadratureSpec parallel_spec;
  parallel_spec.parallel = true;
  ok &= compare(
      "adaptive G, k=0.0052",
      [&] { return response::response_G({0.0052, cavity, serial_spec, 0.0}).value; },
      [&] { return response::response_G({0.0052, cavity, parallel_spec, 0.0}).value; }, repeats);

  ok &= compare(
      "adaptive e'' (L=200)",
      [&] { return lifshitz::d2_energy_per_area(cavity, serial_spec).value; },
      [&] { return lifshitz::d2_energy_per_area(cavity, parallel_spec).value; }, repeats);

  return ok ? 0 : 1;
}
