#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "flqft/causality.hpp"
#include "flqft/errors.hpp"
#include "flqft/report.hpp"

using namespace flqft;

namespace {
QuadratureConfig cfg() {
  QuadratureConfig q;
  q.rel_tol = 1e-9;
  return q;
}
}  // namespace

TEST_CASE("boundary values are symmetric at spacelike points") {
  const QuadratureConfig q = cfg();
  const RVec4 zeta{{0.0, 1.0, 0.0, 0.0}};
  const JostResult r = jost_symmetry(Mass(1.0), zeta, q);
  CHECK(r.rel_diff < 1e-4);
  CHECK(std::abs(r.forward.imag()) < 1e-6 * std::abs(r.forward));

  // equal-time separations are symmetric by the radial form
  const JostResult r0 = jost_symmetry(Mass(0.7), {{0.0, 0.6, 0.8, 0.0}}, q);
  CHECK(r0.rel_diff < 1e-6);

  // non-zero time component, still spacelike
  const JostResult r1 = jost_symmetry(Mass(1.0), {{0.3, 1.0, 0.0, 0.0}}, q);
  CHECK(r1.rel_diff < 1e-4);

  CHECK_THROWS_AS(jost_symmetry(Mass(1.0), {{1.0, 0.2, 0.0, 0.0}}, q), DomainError);
}

TEST_CASE("timelike contrast: boundary values differ across the cut") {
  const QuadratureConfig q = cfg();
  const RVec4 zeta{{1.0, 0.2, 0.0, 0.0}};
  const double eps = 1e-2;
  const cplx fwd = d_minus(Mass(1.0), CVec4::damped(zeta, eps), q);
  const cplx bwd = d_minus(Mass(1.0), CVec4::damped({{-1.0, -0.2, 0.0, 0.0}}, eps), q);
  CHECK(std::abs(fwd - bwd) / std::max(std::abs(fwd), std::abs(bwd)) > 0.1);
}

TEST_CASE("extrapolation order improves the symmetry residual") {
  QuadratureConfig q2 = cfg();
  q2.extrapolation_steps = 2;
  QuadratureConfig q3 = cfg();
  q3.extrapolation_steps = 3;
  const RVec4 zeta{{0.25, 1.1, 0.0, 0.0}};
  const double r2 = jost_symmetry(Mass(1.0), zeta, q2).rel_diff;
  const double r3 = jost_symmetry(Mass(1.0), zeta, q3).rel_diff;
  CHECK(r2 < 1e-3);
  CHECK(r3 <= r2 + 1e-10);
}

TEST_CASE("two-point functional is antisymmetric at spacelike separation") {
  const QuadratureConfig q = cfg();
  const RVec4 zeta{{0.2, 1.0, 0.3, 0.0}};
  const std::vector<FieldLabel> labels = {{FieldLabel::Psi, 0}, {FieldLabel::PsiBar, 0}};

  // free case
  CHECK(antisym_check_2pt(0.0, Mass(1.0), Mass(1.2), zeta, labels, q) < 1e-4);
  // interacting case inside the margin
  CHECK(antisym_check_2pt(0.45, Mass(1.0), Mass(1.2), zeta, labels, q) < 1e-3);

  CHECK_THROWS_AS(
      antisym_check_2pt(0.4, Mass(1.0), Mass(1.0), {{2.0, 0.5, 0.0, 0.0}}, labels, q),
      DomainError);
  CHECK_THROWS_AS(
      antisym_check_2pt(0.4, Mass(1.0), Mass(1.0), zeta,
                        {{FieldLabel::Psi, 0}, {FieldLabel::Psi, 1}}, q),
      SizeMismatchError);
}

TEST_CASE("carrier margins stay positive on a grid") {
  const QuadratureConfig q = cfg();
  const double l = 0.5;
  const double ell = l / (std::sqrt(2.0) * PI);

  Rng rng(29);
  std::vector<RVec4> grid;
  for (int i = 0; i < 150; ++i)
    grid.push_back({{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3),
                     rng.uniform(-3, 3)}});

  // free case: margin identically one
  const CarrierMarginReport free_rep = carrier_margin(0.0, Mass(1.0), 1.1 * ell, grid, q);
  CHECK(free_rep.min_margin == 1.0);

  const CarrierMarginReport rep = carrier_margin(l, Mass(1.0), 1.1 * ell, grid, q);
  CHECK(rep.count == 150);
  CHECK(rep.non_positive == 0);
  CHECK(rep.min_margin > 0.0);

  // widening the deformation never shrinks a margin
  const CarrierMarginReport rep2 = carrier_margin(l, Mass(1.0), 1.5 * ell, grid, q);
  for (size_t i = 0; i < grid.size(); ++i)
    CHECK(rep2.margins[i] >= rep.margins[i] - 1e-6);

  CHECK_THROWS_AS(carrier_margin(2.5, Mass(1.0), 1.1 * ell, grid, q), PreconditionError);
  CHECK_THROWS_AS(carrier_margin(l, Mass(1.0), 0.9 * ell, grid, q), PreconditionError);
}

TEST_CASE("functional is invariant under admissible contour shifts") {
  const QuadratureConfig q = cfg();
  Quad4Config q4;
  q4.nodes_per_axis = 6;
  const ContourTestFunction tf = ContourTestFunction::gaussian(1.0);
  const ChargeVector r({-1, +1});

  // identical shifts give zero by construction
  CHECK(deform_invariance(0.3, Mass(1.0), r, tf, 0.2, 0.2, q, q4) == 0.0);

  // free baseline
  CHECK(deform_invariance(0.0, Mass(1.0), r, tf, 0.15, 0.3, q, q4) < 1e-3);

  // interacting case at shifts bracketing the deformation scale
  const double ellpp = 1.1 * 0.5 / (std::sqrt(2.0) * PI);
  const double diff =
      deform_invariance(0.5, Mass(1.0), r, tf, 0.8 * ellpp, 1.2 * ellpp, q, q4);
  CHECK(diff < 1e-3);
}
