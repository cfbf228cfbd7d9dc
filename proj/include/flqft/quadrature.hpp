#pragma once

#include <functional>
#include <vector>

#include "flqft/complex4.hpp"

namespace flqft {

struct QuadratureConfig {
  double epsilon = 1e-2;       // base of the eps->0 extrapolation ladder
  double cutoff = 0.0;         // radial cutoff; 0 = choose from the analytic tail bound
  int nodes = 24;              // Gauss-Legendre nodes per panel
  double rel_tol = 1e-9;
  int extrapolation_steps = 3; // ladder points for eps->0 limits

  void validate() const;  // throws DomainError on nonsensical values
};

struct GaussLegendre {
  std::vector<double> x, w;  // nodes and weights on [-1,1]
};

// cached nodes/weights, computed once per order by Newton iteration
const GaussLegendre& gauss_legendre(int n);

// sum of n-point Gauss-Legendre panels of width <= h over [a,b]
template <class F>
cplx integrate_panels(const F& f, double a, double b, double h, int nodes) {
  if (b <= a) return 0.0;
  const GaussLegendre& gl = gauss_legendre(nodes);
  const int npanels = std::max(1, static_cast<int>(std::ceil((b - a) / h)));
  const double w = (b - a) / npanels;
  cplx total = 0.0;
  for (int p = 0; p < npanels; ++p) {
    const double lo = a + p * w;
    const double mid = lo + 0.5 * w, half = 0.5 * w;
    cplx acc = 0.0;
    for (size_t i = 0; i < gl.x.size(); ++i) acc += gl.w[i] * f(mid + half * gl.x[i]);
    total += half * acc;
  }
  return total;
}

// second-order Richardson extrapolation to eps = 0 of samples f(eps_k)
// on the ladder eps_k; exact for quadratics in eps
cplx extrapolate_to_zero(const std::vector<double>& eps, const std::vector<cplx>& f);

// the default ladder eps * {1, 10^-1, ..., 10^-(steps-1)}
std::vector<double> epsilon_ladder(const QuadratureConfig& q);

}  // namespace flqft
