#include "flqft/localize1d.hpp"

#include <algorithm>
#include <cmath>

#include "flqft/errors.hpp"

namespace flqft {

StripTestFunction StripTestFunction::sech() {
  StripTestFunction s;
  s.f = [](cplx z) { return 1.0 / std::cosh(z); };
  s.half_width = PI / 2.0;
  s.name = "sech";
  return s;
}

StripTestFunction StripTestFunction::gaussian() {
  StripTestFunction s;
  s.f = [](cplx z) { return std::exp(-z * z); };
  s.half_width = std::numeric_limits<double>::infinity();
  s.name = "gaussian";
  return s;
}

double holomorphy_residual(const StripTestFunction& f, const std::vector<cplx>& samples,
                           double step) {
  double worst = 0.0;
  for (const cplx& z : samples) {
    const cplx dx = (f.f(z + step) - f.f(z - step)) / (2.0 * step);
    const cplx dy = (f.f(z + I * step) - f.f(z - I * step)) / (2.0 * step * I);
    worst = std::max(worst, std::abs(dx - dy));
  }
  return worst;
}

std::vector<cplx> taylor_coeffs(const StripTestFunction& f, int N, double radius,
                                int trap_nodes) {
  if (!(radius > 0.0) || radius >= f.half_width)
    throw RadiusError("taylor_coeffs: radius must be positive and below the half-width");
  if (N < 0) throw DomainError("taylor_coeffs: N must be >= 0");
  // f on the circle once, then all Fourier modes
  std::vector<cplx> ring(trap_nodes);
  for (int k = 0; k < trap_nodes; ++k) {
    const double th = 2.0 * PI * k / trap_nodes;
    ring[k] = f.f(radius * std::exp(I * th));
  }
  std::vector<cplx> c(N + 1);
  double rn = 1.0;
  for (int n = 0; n <= N; ++n) {
    // extended precision: the modes cancel down from O(1) ring values
    std::complex<long double> acc = 0.0;
    for (int k = 0; k < trap_nodes; ++k) {
      const long double th = 2.0L * PI * k * n / trap_nodes;
      acc += std::complex<long double>(ring[k]) *
             std::complex<long double>(std::cos(th), -std::sin(th));
    }
    c[n] = static_cast<cplx>(acc / std::complex<long double>(trap_nodes * rn));
    rn *= radius;
  }
  return c;
}

namespace {
// entire functions are capped at radius 4 to keep the ring values from
// overwhelming the low coefficients
double default_radius(const StripTestFunction& f) {
  return 0.9 * std::min(f.half_width, 4.0);
}
}  // namespace

std::vector<cplx> delta_series_partials(const StripTestFunction& f, double a, int Nmax,
                                        double radius) {
  if (radius == 0.0) radius = default_radius(f);
  const int nodes = std::max(256, 4 * Nmax);  // keep aliasing below the orders used
  const std::vector<cplx> c = taylor_coeffs(f, Nmax, radius, nodes);
  std::vector<cplx> partials(Nmax + 1);
  cplx sum = 0.0;
  double pw = 1.0;
  for (int n = 0; n <= Nmax; ++n) {
    sum += pw * c[n];
    partials[n] = sum;
    pw *= -a;
  }
  return partials;
}

cplx delta_series_apply(const StripTestFunction& f, double a, int N, double radius) {
  return delta_series_partials(f, a, N, radius).back();
}

LocalizationReport localization_report(const StripTestFunction& f,
                                       const std::vector<double>& a_values, int Nmax,
                                       double tol, double blowup) {
  LocalizationReport rep;
  rep.half_width = f.half_width;
  for (double a : a_values) {
    LocalizationEntry e;
    e.a = a;
    const std::vector<cplx> partials = delta_series_partials(f, a, Nmax);
    e.final_partial = partials.back();
    e.target = f.f(cplx(-a));
    e.final_error = std::abs(e.final_partial - e.target);
    for (const cplx& s : partials) e.max_magnitude = std::max(e.max_magnitude, std::abs(s));
    if (e.max_magnitude > blowup)
      e.verdict = LocalizationVerdict::Diverging;
    else if (e.final_error <= tol * std::max(1.0, std::abs(e.target)))
      e.verdict = LocalizationVerdict::Converged;
    else
      e.verdict = LocalizationVerdict::Indeterminate;
    const bool below = std::abs(a) < f.half_width;
    e.interpretation =
        std::string("shift |a| = ") + std::to_string(std::abs(a)) +
        (below ? " below" : " beyond") + " the localization scale " +
        std::to_string(f.half_width) +
        (below ? ": the functional cannot separate {0} from {-a}"
               : ": the functional distinguishes {0} from {-a}");
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace flqft
