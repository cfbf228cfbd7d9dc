#include "flqft/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "flqft/errors.hpp"

namespace flqft {

Mass::Mass(double v) : value(v) {
  if (!(v >= 0.0)) throw DomainError("mass must be non-negative");
}

void QuadratureConfig::validate() const {
  if (!(epsilon > 0)) throw DomainError("QuadratureConfig.epsilon must be positive");
  if (!(rel_tol > 0)) throw DomainError("QuadratureConfig.rel_tol must be positive");
  if (nodes < 2) throw DomainError("QuadratureConfig.nodes must be >= 2");
  if (extrapolation_steps < 0) throw DomainError("QuadratureConfig.extrapolation_steps must be >= 0");
}

const GaussLegendre& gauss_legendre(int n) {
  static std::map<int, GaussLegendre> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  GaussLegendre gl;
  gl.x.resize(n);
  gl.w.resize(n);
  // Newton iteration on P_n; roots are symmetric about 0
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    gl.x[i] = -x;
    gl.x[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    gl.w[i] = w;
    gl.w[n - 1 - i] = w;
  }
  return cache.emplace(n, std::move(gl)).first->second;
}

cplx extrapolate_to_zero(const std::vector<double>& eps, const std::vector<cplx>& f) {
  if (eps.size() != f.size() || eps.empty())
    throw SizeMismatchError("extrapolate_to_zero: ladder/sample size mismatch");
  // Lagrange interpolation evaluated at eps = 0
  cplx out = 0.0;
  for (size_t i = 0; i < eps.size(); ++i) {
    double L = 1.0;
    for (size_t j = 0; j < eps.size(); ++j) {
      if (j == i) continue;
      L *= (0.0 - eps[j]) / (eps[i] - eps[j]);
    }
    out += L * f[i];
  }
  return out;
}

std::vector<double> epsilon_ladder(const QuadratureConfig& q) {
  q.validate();
  const int steps = std::max(1, q.extrapolation_steps);
  std::vector<double> eps(steps);
  for (int k = 0; k < steps; ++k) eps[k] = q.epsilon * std::pow(10.0, -k);
  return eps;
}

}  // namespace flqft
