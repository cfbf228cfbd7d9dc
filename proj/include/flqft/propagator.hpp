#pragma once

#include <span>
#include <vector>

#include "flqft/complex4.hpp"
#include "flqft/quadrature.hpp"

namespace flqft {

// Free scalar two-point function D_m^(-)(z) at complex time z0 (backward
// tube, Im z0 < 0) and real spatial part, plus its first derivatives, the
// pole/smooth decomposition, the a-priori bounds and the light-cone
// geometry used by the carrier estimates.

struct PropagatorResult {
  cplx value;
  CVec4 grad;  // component mu = dD/dz^mu
};

// radial momentum integral, damped by Im z0 < 0
cplx d_minus(Mass m, const CVec4& z, const QuadratureConfig& q);

// value and gradient from one quadrature pass
PropagatorResult d_minus_with_grad(Mass m, const CVec4& z, const QuadratureConfig& q);

CVec4 d_minus_grad(Mass m, const CVec4& z, const QuadratureConfig& q);

// auxiliary slow-decay remainder; absolutely convergent for Im z <= 0,
// |g_m| <= sqrt(2) pi / 4
cplx g_m(Mass m, cplx z, double x, const QuadratureConfig& q);

// pole term plus g_m remainders; valid for Im z0 <= 0 away from the poles
// z0 = +-|x|, in particular at real spacelike points
cplx d_minus_decomposed(Mass m, const CVec4& z, const QuadratureConfig& q);

// boundary value at a real point by Richardson extrapolation of
// d_minus_decomposed along the epsilon ladder of q
cplx d_minus_boundary(Mass m, const RVec4& x, const QuadratureConfig& q);

// extrapolated value+gradient at a real point (direct quadrature ladder)
PropagatorResult d_minus_boundary_with_grad(Mass m, const RVec4& x, const QuadratureConfig& q);

// radius below which 2 l^2 |D| < 1 can fail; monotone in m and l
double ell_fundamental(Mass m, double l);

// Euclidean distance from x to the closed light cone {|x0| >= |x|}
double dist_to_lightcone(const RVec4& x);

// contour-deformation depth: ell near the cone, tapering to 0 at distance ell
double epsilon_deform(double ell, const RVec4& x);

enum class BoundKind { EpsilonForm, AForm };

// EpsilonForm: (2 pi eps)^-2 with param = eps
// AForm:       (2 pi)^-2 (1/a^2 + m sqrt(2) pi / (4 a)) with param = a
double bound_estimate(BoundKind kind, Mass m, double param);

// min_{+-} |z0 +- |x|| for a damped real point
double min_cone_distance_a(const RVec4& x, double eps);

// ---- grid sweeps (OpenMP kernels; parallel=false is the serial reference) --

struct BoundSweepResult {
  int count = 0;
  int violations = 0;
  double max_ratio = 0.0;  // max |D| / bound over the grid
};

// checks |D(x0 - i eps, x)| <= (2 pi eps)^-2 over the grid
BoundSweepResult propagator_bound_sweep(Mass m, double eps, std::span<const RVec4> grid,
                                        const QuadratureConfig& q, bool parallel = true);

struct FundamentalLengthSweepResult {
  int count = 0;
  int violations = 0;   // points with 2 l^2 |D| >= 1
  double min_margin = 1.0;  // min of 1 - 2 l^2 |D|
};

// checks 2 l^2 |D| < 1 on damped points whose a exceeds ell_m(l)(1+guard)
FundamentalLengthSweepResult fundamental_length_sweep(Mass m, double l,
                                                      std::span<const RVec4> grid,
                                                      std::span<const double> eps,
                                                      double guard,
                                                      const QuadratureConfig& q,
                                                      bool parallel = true);

}  // namespace flqft
