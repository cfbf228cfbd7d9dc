#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "flqft/complex4.hpp"

namespace flqft {

// One-dimensional localization demonstrator: a shifted-point-mass series of
// derivative terms applied to strip-holomorphic test functions. The partial
// sums converge to f(-a) exactly when |a| is below the strip half-width.

struct StripTestFunction {
  std::function<cplx(cplx)> f;
  double half_width = std::numeric_limits<double>::infinity();
  std::string name;

  // sech, holomorphic on |Im z| < pi/2, rapidly decreasing on horizontal lines
  static StripTestFunction sech();
  // exp(-z^2), entire, rapidly decreasing on horizontal lines
  static StripTestFunction gaussian();
};

// largest Cauchy-Riemann finite-difference residual of f at the sample
// points (a holomorphy spot check, not a proof)
double holomorphy_residual(const StripTestFunction& f, const std::vector<cplx>& samples,
                           double step = 1e-5);

// Taylor coefficients c_n = f^(n)(0)/n! via the Cauchy integral on a circle
// of the given radius, trapezoid rule with trap_nodes points
std::vector<cplx> taylor_coeffs(const StripTestFunction& f, int N, double radius,
                                int trap_nodes = 256);

// partial sums S_N = sum_{n<=N} (-a)^n c_n for N = 0..Nmax
std::vector<cplx> delta_series_partials(const StripTestFunction& f, double a, int Nmax,
                                        double radius = 0.0);

// S_N itself; radius 0 picks 0.9 * min(half_width, 8) automatically
cplx delta_series_apply(const StripTestFunction& f, double a, int N, double radius = 0.0);

enum class LocalizationVerdict { Converged, Diverging, Indeterminate };

struct LocalizationEntry {
  double a = 0.0;
  LocalizationVerdict verdict = LocalizationVerdict::Indeterminate;
  cplx final_partial;
  cplx target;            // f(-a)
  double final_error = 0.0;
  double max_magnitude = 0.0;  // max |S_N| over N <= Nmax
  std::string interpretation;
};

struct LocalizationReport {
  double half_width = 0.0;
  std::vector<LocalizationEntry> entries;
};

// per-shift verdict with the strip half-width annotated; divergence is
// declared when the partial sums exceed the magnitude threshold
LocalizationReport localization_report(const StripTestFunction& f,
                                       const std::vector<double>& a_values, int Nmax,
                                       double tol = 1e-8, double blowup = 1e6);

}  // namespace flqft
