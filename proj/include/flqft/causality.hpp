#pragma once

#include <span>
#include <vector>

#include "flqft/complex4.hpp"
#include "flqft/diracfree.hpp"
#include "flqft/gaussmodel.hpp"
#include "flqft/propagator.hpp"

namespace flqft {

// Numerical shadows of the extended-causality statements: boundary-value
// symmetry at spacelike points, antisymmetry of the combined two-point
// functional under transposition, carrier-margin grids for the deformed
// contour, and contour-shift independence of the functional.

struct JostResult {
  cplx forward;    // extrapolated D at +zeta
  cplx backward;   // extrapolated D at -zeta
  double rel_diff; // |forward - backward| / max(|forward|, |backward|, floor)
};

// requires a real spacelike zeta; extrapolates d_minus_decomposed along the
// epsilon ladder on both sides
JostResult jost_symmetry(Mass m, const RVec4& zeta, const QuadratureConfig& q);

// residual of W(x,y) + W_swapped(y,x) for the two-point product-field
// functional at spacelike separation zeta = x - y, extrapolated to the
// boundary; labels fix the spinor components
double antisym_check_2pt(double l, Mass m, Mass M, const RVec4& zeta,
                         const std::vector<FieldLabel>& labels, const QuadratureConfig& q);

struct CarrierMarginReport {
  int count = 0;
  int non_positive = 0;
  double min_margin = 1.0;
  std::vector<double> margins;  // per grid point
};

// per-point margin 1 - 2 l^2 |D(x0 - i eps_ell''(x), x)| over the grid;
// requires m l < 2 and ell_pp > l/(sqrt(2) pi)
CarrierMarginReport carrier_margin(double l, Mass m, double ell_pp,
                                   std::span<const RVec4> grid, const QuadratureConfig& q,
                                   bool parallel = true);

// relative difference of apply_functional_2pt at two admissible shifts
double deform_invariance(double l, Mass m, const ChargeVector& r,
                         const ContourTestFunction& testfn, double shift_a, double shift_b,
                         const QuadratureConfig& q, const Quad4Config& q4,
                         bool parallel = true);

}  // namespace flqft
