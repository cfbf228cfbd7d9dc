#include "flqft/causality.hpp"

#include <algorithm>
#include <cmath>

#include "flqft/errors.hpp"
#include "flqft/parallel.hpp"

namespace flqft {

namespace {
constexpr double kFloor = 1e-12;

RVec4 negate(const RVec4& x) { return {{-x[0], -x[1], -x[2], -x[3]}}; }
}  // namespace

JostResult jost_symmetry(Mass m, const RVec4& zeta, const QuadratureConfig& q) {
  if (zeta.minkowski_sq() >= 0.0)
    throw DomainError("jost_symmetry requires a spacelike point");
  JostResult out;
  out.forward = d_minus_boundary(m, zeta, q);
  out.backward = d_minus_boundary(m, negate(zeta), q);
  out.rel_diff = std::abs(out.forward - out.backward) /
                 std::max({std::abs(out.forward), std::abs(out.backward), kFloor});
  return out;
}

double antisym_check_2pt(double l, Mass m, Mass M, const RVec4& zeta,
                         const std::vector<FieldLabel>& labels, const QuadratureConfig& q) {
  if (zeta.minkowski_sq() >= 0.0)
    throw DomainError("antisym_check_2pt requires spacelike separation");
  if (labels.size() != 2 || labels[0].kind == labels[1].kind)
    throw SizeMismatchError("antisym_check_2pt: one psi and one psibar label required");

  // W(x, y) with the given label order, and the label-and-argument
  // transposed functional at the mirrored separation; both extrapolated
  // to the boundary along the epsilon ladder
  const std::vector<double> ladder = epsilon_ladder(q);
  const std::vector<FieldLabel> swapped = {labels[1], labels[0]};
  std::vector<cplx> w1(ladder.size()), w2(ladder.size());
  parallel_for_index(static_cast<std::int64_t>(ladder.size()), [&](std::int64_t k) {
    const double eps = ladder[static_cast<size_t>(k)];
    // points on a two-point contour with time ordering fixed by the slots
    const CVec4 zf = CVec4::damped(zeta, eps);
    const CVec4 zb = CVec4::damped(negate(zeta), eps);
    const std::vector<CVec4> pts_f = {zf, CVec4{}};
    const std::vector<CVec4> pts_b = {zb, CVec4{}};
    w1[k] = full_model_vev(l, m, M, pts_f, {}, labels, q);
    w2[k] = full_model_vev(l, m, M, pts_b, {}, swapped, q);
  });
  const cplx W1 = extrapolate_to_zero(ladder, w1);
  const cplx W2 = extrapolate_to_zero(ladder, w2);
  return std::abs(W1 + W2) / std::max({std::abs(W1), std::abs(W2), kFloor});
}

CarrierMarginReport carrier_margin(double l, Mass m, double ell_pp,
                                   std::span<const RVec4> grid, const QuadratureConfig& q,
                                   bool parallel) {
  if (m.value * l >= 2.0) throw PreconditionError("carrier_margin requires m l < 2");
  const double ell = l / (std::sqrt(2.0) * PI);
  if (!(ell_pp > ell))
    throw PreconditionError("carrier_margin requires ell'' > l/(sqrt(2) pi)");

  CarrierMarginReport rep;
  rep.count = static_cast<int>(grid.size());
  rep.margins.assign(grid.size(), 1.0);
  if (l == 0.0) return rep;

  // below this damping the direct integral is slow; the decomposition is
  // regular there because such points sit far from the light cone
  const double eps_switch = 1e-3;
  parallel_for_index(
      static_cast<std::int64_t>(grid.size()),
      [&](std::int64_t i) {
        const RVec4& x = grid[i];
        const double eps = epsilon_deform(ell_pp, x);
        // weakly damped points sit far from the light cone, where the
        // decomposition evaluates directly (including eps = 0)
        const cplx D = eps >= eps_switch ? d_minus(m, CVec4::damped(x, eps), q)
                                         : d_minus_decomposed(m, CVec4::damped(x, eps), q);
        rep.margins[i] = 1.0 - 2.0 * l * l * std::abs(D);
      },
      parallel);
  for (double mg : rep.margins) {
    rep.min_margin = std::min(rep.min_margin, mg);
    if (mg <= 0.0) ++rep.non_positive;
  }
  return rep;
}

double deform_invariance(double l, Mass m, const ChargeVector& r,
                         const ContourTestFunction& testfn, double shift_a, double shift_b,
                         const QuadratureConfig& q, const Quad4Config& q4, bool parallel) {
  const cplx va = apply_functional_2pt(l, m, r, testfn, shift_a, q, q4, parallel);
  const cplx vb = apply_functional_2pt(l, m, r, testfn, shift_b, q, q4, parallel);
  return std::abs(va - vb) / std::max({std::abs(va), std::abs(vb), kFloor});
}

}  // namespace flqft
