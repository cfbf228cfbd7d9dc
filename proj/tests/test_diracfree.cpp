#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "flqft/diracfree.hpp"
#include "flqft/errors.hpp"
#include "flqft/report.hpp"

using namespace flqft;

namespace {
QuadratureConfig cfg() {
  QuadratureConfig q;
  q.rel_tol = 1e-9;
  return q;
}

double rel_err(cplx a, cplx b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

SpinorMatrix invert(const SpinorMatrix& A) {
  // Gauss-Jordan on [A | I]
  cplx aug[4][8] = {};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) aug[i][j] = A(i, j);
    aug[i][4 + i] = 1.0;
  }
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int row = col + 1; row < 4; ++row)
      if (std::abs(aug[row][col]) > std::abs(aug[piv][col])) piv = row;
    for (int j = 0; j < 8; ++j) std::swap(aug[piv][j], aug[col][j]);
    const cplx d = aug[col][col];
    for (int j = 0; j < 8; ++j) aug[col][j] /= d;
    for (int row = 0; row < 4; ++row) {
      if (row == col) continue;
      const cplx f = aug[row][col];
      for (int j = 0; j < 8; ++j) aug[row][j] -= f * aug[col][j];
    }
  }
  SpinorMatrix inv;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) inv(i, j) = aug[i][4 + j];
  return inv;
}

std::vector<CVec4> contour_points(const std::vector<RVec4>& xs) {
  ContourSpec spec;
  spec.y0.resize(xs.size());
  for (size_t j = 0; j < xs.size(); ++j)
    spec.y0[j] = -0.55 * static_cast<double>(xs.size() - 1 - j);
  return spec.points(xs);
}
}  // namespace

TEST_CASE("gamma matrices satisfy the Clifford relations") {
  const GammaCheckReport rep = gamma_check(dirac_basis());
  CHECK(rep.ok);
  CHECK(rep.max_residual == 0.0);

  // a broken basis is reported
  GammaBasis broken = dirac_basis();
  broken.gamma[1] = SpinorMatrix{};
  CHECK_THROWS_AS(gamma_check(broken), AlgebraError);
  try {
    gamma_check(broken);
  } catch (const AlgebraError& e) {
    CHECK(std::string(e.what()).find("gamma^1") != std::string::npos);
  }
}

TEST_CASE("similarity transforms preserve the relations") {
  // random unitary via Gram-Schmidt keeps gamma^0 hermitian as well
  Rng rng(71);
  SpinorMatrix U;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) U(i, j) = rng.complex_in_disk(1.0);
  for (int col = 0; col < 4; ++col) {
    for (int prev = 0; prev < col; ++prev) {
      cplx dot = 0.0;
      for (int i = 0; i < 4; ++i) dot += std::conj(U(i, prev)) * U(i, col);
      for (int i = 0; i < 4; ++i) U(i, col) -= dot * U(i, prev);
    }
    double norm = 0.0;
    for (int i = 0; i < 4; ++i) norm += std::norm(U(i, col));
    for (int i = 0; i < 4; ++i) U(i, col) /= std::sqrt(norm);
  }
  SpinorMatrix Udag;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) Udag(i, j) = std::conj(U(j, i));

  GammaBasis rotated;
  for (int mu = 0; mu < 4; ++mu) rotated.gamma[mu] = U * dirac_basis().gamma[mu] * Udag;
  const GammaCheckReport rep = gamma_check(rotated, 1e-12);
  CHECK(rep.ok);

  // scalar outputs are representation-independent: the trace identity holds
  // in the rotated basis with the same value
  QuadratureConfig q;
  q.rel_tol = 1e-9;
  CVec4 z{{cplx(0.2, -0.6), cplx(0.4), cplx(-0.3), cplx(0.1)}};
  const cplx tr_std = s_minus(Mass(1.1), z, q).trace();
  const cplx tr_rot = s_minus(Mass(1.1), z, q, rotated).trace();
  CHECK(std::abs(tr_std - tr_rot) < 1e-12 * std::abs(tr_std));

  // non-unitary transforms still preserve the anticommutators
  SpinorMatrix S;
  for (int i = 0; i < 4; ++i) {
    S(i, i) = 1.0;
    for (int j = 0; j < 4; ++j) S(i, j) += 0.3 * rng.complex_in_disk(1.0);
  }
  const SpinorMatrix Sinv = invert(S);
  GammaBasis skew;
  for (int mu = 0; mu < 4; ++mu) skew.gamma[mu] = S * dirac_basis().gamma[mu] * Sinv;
  double worst = 0.0;
  const double eta[4] = {1.0, -1.0, -1.0, -1.0};
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      const SpinorMatrix anti = skew.gamma[mu] * skew.gamma[nu] + skew.gamma[nu] * skew.gamma[mu];
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          const cplx expect = (mu == nu && i == j) ? cplx(2.0 * eta[mu]) : cplx(0.0);
          worst = std::max(worst, std::abs(anti(i, j) - expect));
        }
    }
  CHECK(worst < 1e-12);
}

TEST_CASE("trace identity and the massless case") {
  const QuadratureConfig q = cfg();
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    CVec4 z{{cplx(rng.uniform(-1, 1), -rng.uniform(0.2, 1.2)), cplx(rng.uniform(-1, 1)),
             cplx(rng.uniform(-1, 1)), cplx(rng.uniform(-1, 1))}};
    const double M = rng.uniform(0.3, 2.0);
    const SpinorMatrix S = s_minus(Mass(M), z, q);
    const cplx D = d_minus(Mass(M), z, q);
    CHECK(rel_err(S.trace(), 4.0 * M * D) < 1e-10);
  }
  // massless: traceless
  CVec4 z{{cplx(0.2, -0.5), cplx(0.4), cplx(0.0), cplx(0.0)}};
  CHECK(std::abs(s_minus(Mass(0.0), z, q).trace()) < 1e-12);
}

TEST_CASE("derivative part against finite differences") {
  const QuadratureConfig q = cfg();
  const Mass M(1.0);
  CVec4 z{{cplx(0.3, -0.45), cplx(0.25), cplx(-0.1), cplx(0.4)}};
  const SpinorMatrix S = s_minus(M, z, q);
  // rebuild from central differences of the scalar
  const double h = 1e-4;
  PropagatorResult fd;
  fd.value = d_minus(M, z, q);
  for (int mu = 0; mu < 4; ++mu) {
    CVec4 zp = z, zm = z;
    zp[mu] += h;
    zm[mu] -= h;
    fd.grad[mu] = (d_minus(M, zp, q) - d_minus(M, zm, q)) / (2.0 * h);
  }
  const SpinorMatrix Sfd = s_minus_from(fd, M.value);
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) worst = std::max(worst, std::abs(S(i, j) - Sfd(i, j)));
  CHECK(worst / S.frobenius() < 1e-5);
}

TEST_CASE("two-point base cases") {
  const QuadratureConfig q = cfg();
  const Mass M(1.3);
  const auto pts = contour_points({{{0.1, 0.3, 0.0, 0.0}}, {{-0.2, 0.0, 0.5, 0.0}}});

  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const cplx expect = s_minus(M, pts[0] - pts[1], q)(a, b);
      const cplx got = dirac_npoint(
          M, pts, {{FieldLabel::Psi, a}, {FieldLabel::PsiBar, b}}, q);
      CHECK(rel_err(got, expect) < 1e-12);
      // reversed order uses the other boundary kernel
      const cplx expect_rev = s_minus_reversed(M, pts[0] - pts[1], q)(b, a);
      const cplx got_rev = dirac_npoint(
          M, pts, {{FieldLabel::PsiBar, a}, {FieldLabel::Psi, b}}, q);
      CHECK(rel_err(got_rev, expect_rev) < 1e-12);
    }

  // parity: odd and unbalanced label sets vanish
  CHECK(dirac_npoint(M, {pts[0]}, {{FieldLabel::Psi, 0}}, q) == cplx(0.0));
  CHECK(dirac_npoint(M, pts, {{FieldLabel::Psi, 0}, {FieldLabel::Psi, 1}}, q) == cplx(0.0));
}

TEST_CASE("four-point determinant equals the signed enumeration") {
  const QuadratureConfig q = cfg();
  const Mass M(1.0);
  const auto pts = contour_points({{{0.1, 0.3, 0.0, 0.0}},
                                   {{-0.2, 0.0, 0.5, 0.0}},
                                   {{0.25, -0.3, 0.0, 0.2}},
                                   {{0.0, 0.15, -0.4, 0.0}}});
  Rng rng(77);
  const std::vector<std::vector<FieldLabel::Kind>> patterns = {
      {FieldLabel::Psi, FieldLabel::PsiBar, FieldLabel::Psi, FieldLabel::PsiBar},
      {FieldLabel::Psi, FieldLabel::Psi, FieldLabel::PsiBar, FieldLabel::PsiBar},
      {FieldLabel::PsiBar, FieldLabel::Psi, FieldLabel::PsiBar, FieldLabel::Psi},
      {FieldLabel::PsiBar, FieldLabel::Psi, FieldLabel::Psi, FieldLabel::PsiBar},
  };
  for (const auto& pattern : patterns) {
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<FieldLabel> labels;
      for (auto k : pattern)
        labels.push_back({k, static_cast<int>(rng.uniform() * 3.999)});
      const cplx det_val = dirac_npoint(M, pts, labels, q);
      const cplx enum_val = dirac_npoint_enum(M, pts, labels, q);
      CHECK(std::abs(det_val - enum_val) <=
            1e-12 * std::max({std::abs(det_val), std::abs(enum_val), 1e-30}));
    }
  }
}

TEST_CASE("adjacent same-kind transposition flips the sign") {
  const QuadratureConfig q = cfg();
  const Mass M(0.9);
  const auto pts = contour_points({{{0.1, 0.3, 0.0, 0.0}},
                                   {{-0.2, 0.0, 0.5, 0.0}},
                                   {{0.25, -0.3, 0.0, 0.2}},
                                   {{0.0, 0.15, -0.4, 0.0}}});
  const std::vector<FieldLabel> labels = {{FieldLabel::Psi, 0},
                                          {FieldLabel::Psi, 2},
                                          {FieldLabel::PsiBar, 1},
                                          {FieldLabel::PsiBar, 3}};
  const cplx base = dirac_npoint(M, pts, labels, q);
  // swap the two psi slots together with their points
  const std::vector<CVec4> pts_sw = {pts[1], pts[0], pts[2], pts[3]};
  const std::vector<FieldLabel> labels_sw = {labels[1], labels[0], labels[2], labels[3]};
  const cplx swapped = dirac_npoint_enum(M, pts_sw, labels_sw, q);
  CHECK(rel_err(swapped, -base) < 1e-10);
}

TEST_CASE("product field factorizes") {
  const QuadratureConfig q = cfg();
  const Mass m(1.0), M(1.4);
  const auto pts = contour_points({{{0.1, 0.3, 0.0, 0.0}}, {{-0.2, 0.0, 0.5, 0.0}}});
  const std::vector<FieldLabel> labels = {{FieldLabel::Psi, 1}, {FieldLabel::PsiBar, 2}};

  // l = 0 reduces to the free Dirac value
  const cplx free_val = dirac_npoint(M, pts, labels, q);
  CHECK(rel_err(full_model_vev(0.0, m, M, pts, {}, labels, q), free_val) < 1e-12);

  // n = 2 closed form and exact multiplicativity
  const double l = 0.7;
  const cplx D = d_minus(m, pts[0] - pts[1], q);
  const cplx gauss = std::pow(1.0 - 4.0 * std::pow(l, 4) * D * D, -0.5);
  const cplx joint = full_model_vev(l, m, M, pts, {-1, +1}, labels, q);
  CHECK(rel_err(joint, free_val * gauss) < 1e-10);

  const cplx refactored = dirac_npoint(M, pts, labels, q) *
                          rho_vev(l, m, pts, ChargeVector({-1, +1}), q);
  CHECK(std::abs(joint - refactored) <= 1e-12 * std::abs(joint));

  // charge/label consistency is enforced
  CHECK_THROWS_AS(full_model_vev(l, m, M, pts, {+1, -1}, labels, q), PreconditionError);
}
