// Timing comparison of the OpenMP kernels against their serial reference
// paths, with the deviation between the two results.

#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "flqft/causality.hpp"
#include "flqft/gaussmodel.hpp"
#include "flqft/parallel.hpp"
#include "flqft/propagator.hpp"
#include "flqft/report.hpp"
#include "flqft/wickcomb.hpp"

using namespace flqft;

namespace {

double now() {
#ifdef _OPENMP
  return omp_get_wtime();
#else
  return static_cast<double>(clock()) / CLOCKS_PER_SEC;
#endif
}

struct Row {
  const char* name;
  double t_serial, t_parallel, deviation;
};

void print(const Row& r) {
  std::printf("%-28s serial %8.3f s   parallel %8.3f s   speedup %5.2fx   |delta| %.3g\n",
              r.name, r.t_serial, r.t_parallel, r.t_serial / r.t_parallel, r.deviation);
}

}  // namespace

int main() {
  QuadratureConfig q;
  q.rel_tol = 1e-9;
  std::printf("threads available: %d\n\n", max_threads());

  {
    Rng rng(1);
    std::vector<RVec4> grid;
    for (int i = 0; i < 400; ++i)
      grid.push_back({{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3),
                       rng.uniform(-3, 3)}});
    double t0 = now();
    const BoundSweepResult a = propagator_bound_sweep(Mass(1.0), 0.2, grid, q, false);
    double t1 = now();
    const BoundSweepResult b = propagator_bound_sweep(Mass(1.0), 0.2, grid, q, true);
    double t2 = now();
    print({"propagator bound sweep", t1 - t0, t2 - t1, std::abs(a.max_ratio - b.max_ratio)});
  }

  {
    Rng rng(2);
    PairingMatrix t(4);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) t.set(i, j, rng.complex_in_disk(0.9));
    const std::vector<int> degrees = {4, 4, 4, 4};
    double t0 = now();
    const cplx a = monomial_vev_oracle(degrees, t, false);
    double t1 = now();
    const cplx b = monomial_vev_oracle(degrees, t, true);
    double t2 = now();
    print({"pairing enumeration (16)", t1 - t0, t2 - t1, std::abs(a - b)});
  }

  {
    Quad4Config q4;
    q4.nodes_per_axis = 10;
    const ContourTestFunction tf = ContourTestFunction::gaussian(1.0);
    double t0 = now();
    const cplx a =
        apply_functional_2pt(0.5, Mass(1.0), ChargeVector({-1, +1}), tf, 0.2, q, q4, false);
    double t1 = now();
    const cplx b =
        apply_functional_2pt(0.5, Mass(1.0), ChargeVector({-1, +1}), tf, 0.2, q, q4, true);
    double t2 = now();
    print({"contour functional 10^4", t1 - t0, t2 - t1, std::abs(a - b)});
  }

  {
    Rng rng(3);
    std::vector<RVec4> grid;
    for (int i = 0; i < 300; ++i)
      grid.push_back({{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3),
                       rng.uniform(-3, 3)}});
    const double ell = 0.5 / (std::sqrt(2.0) * PI);
    double t0 = now();
    const CarrierMarginReport a = carrier_margin(0.5, Mass(1.0), 1.1 * ell, grid, q, false);
    double t1 = now();
    const CarrierMarginReport b = carrier_margin(0.5, Mass(1.0), 1.1 * ell, grid, q, true);
    double t2 = now();
    print({"carrier margin grid", t1 - t0, t2 - t1,
           std::abs(a.min_margin - b.min_margin)});
  }

  return 0;
}
