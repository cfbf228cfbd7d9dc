#include "flqft/diracfree.hpp"

#include <algorithm>
#include <cmath>

#include "flqft/errors.hpp"

namespace flqft {

double SpinorMatrix::frobenius() const {
  double s = 0.0;
  for (const cplx& v : m) s += std::norm(v);
  return std::sqrt(s);
}

SpinorMatrix operator+(const SpinorMatrix& a, const SpinorMatrix& b) {
  SpinorMatrix out;
  for (int i = 0; i < 16; ++i) out.m[i] = a.m[i] + b.m[i];
  return out;
}

SpinorMatrix operator*(const SpinorMatrix& a, const SpinorMatrix& b) {
  SpinorMatrix out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < 4; ++k) s += a(i, k) * b(k, j);
      out(i, j) = s;
    }
  return out;
}

SpinorMatrix operator*(cplx s, const SpinorMatrix& a) {
  SpinorMatrix out;
  for (int i = 0; i < 16; ++i) out.m[i] = s * a.m[i];
  return out;
}

const GammaBasis& dirac_basis() {
  static const GammaBasis basis = [] {
    GammaBasis b;
    // gamma^0 = diag(1,1,-1,-1)
    b.gamma[0](0, 0) = 1;
    b.gamma[0](1, 1) = 1;
    b.gamma[0](2, 2) = -1;
    b.gamma[0](3, 3) = -1;
    // gamma^k = [[0, sigma_k], [-sigma_k, 0]]
    const cplx s1[2][2] = {{0, 1}, {1, 0}};
    const cplx s2[2][2] = {{0, -I}, {I, 0}};
    const cplx s3[2][2] = {{1, 0}, {0, -1}};
    auto fill = [](SpinorMatrix& g, const cplx s[2][2]) {
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          g(i, 2 + j) = s[i][j];
          g(2 + i, j) = -s[i][j];
        }
    };
    fill(b.gamma[1], s1);
    fill(b.gamma[2], s2);
    fill(b.gamma[3], s3);
    return b;
  }();
  return basis;
}

GammaCheckReport gamma_check(const GammaBasis& basis, double tol) {
  GammaCheckReport rep;
  const double eta[4] = {1.0, -1.0, -1.0, -1.0};
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = mu; nu < 4; ++nu) {
      const SpinorMatrix anti =
          basis.gamma[mu] * basis.gamma[nu] + basis.gamma[nu] * basis.gamma[mu];
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          const cplx expect = (mu == nu && i == j) ? cplx(2.0 * eta[mu]) : cplx(0.0);
          rep.max_residual = std::max(rep.max_residual, std::abs(anti(i, j) - expect));
          if (std::abs(anti(i, j) - expect) > tol && rep.ok) {
            rep.ok = false;
            rep.detail = "anticommutator {gamma^" + std::to_string(mu) + ", gamma^" +
                         std::to_string(nu) + "} violated at (" + std::to_string(mu) + "," +
                         std::to_string(nu) + ")";
          }
        }
    }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double herm = std::abs(basis.gamma[0](i, j) - std::conj(basis.gamma[0](j, i)));
      rep.max_residual = std::max(rep.max_residual, herm);
      if (herm > tol && rep.ok) {
        rep.ok = false;
        rep.detail = "gamma^0 hermiticity violated";
      }
    }
  if (!rep.ok) throw AlgebraError("gamma_check: " + rep.detail);
  return rep;
}

SpinorMatrix s_minus_from(const PropagatorResult& pr, double M, const GammaBasis& basis) {
  SpinorMatrix out;
  for (int mu = 0; mu < 4; ++mu) out = out + (I * pr.grad[mu]) * basis.gamma[mu];
  for (int i = 0; i < 4; ++i) out(i, i) += M * pr.value;
  return out;
}

SpinorMatrix s_minus_reversed_from(const PropagatorResult& pr, double M,
                                   const GammaBasis& basis) {
  SpinorMatrix out;
  for (int mu = 0; mu < 4; ++mu) out = out + (I * pr.grad[mu]) * basis.gamma[mu];
  for (int i = 0; i < 4; ++i) out(i, i) -= M * pr.value;
  return out;
}

SpinorMatrix s_minus(Mass M, const CVec4& z, const QuadratureConfig& q,
                     const GammaBasis& basis) {
  return s_minus_from(d_minus_with_grad(M, z, q), M.value, basis);
}

SpinorMatrix s_minus_reversed(Mass M, const CVec4& z, const QuadratureConfig& q,
                              const GammaBasis& basis) {
  return s_minus_reversed_from(d_minus_with_grad(M, z, q), M.value, basis);
}

namespace {

// contraction value for slots i < j (earliest first)
cplx slot_contraction(Mass M, const std::vector<CVec4>& points,
                      const std::vector<FieldLabel>& labels, int i, int j,
                      const QuadratureConfig& q, const GammaBasis& basis) {
  const FieldLabel& Li = labels[i];
  const FieldLabel& Lj = labels[j];
  const CVec4 z = points[i] - points[j];
  if (Li.kind == FieldLabel::Psi && Lj.kind == FieldLabel::PsiBar)
    return s_minus(M, z, q, basis)(Li.spinor, Lj.spinor);
  if (Li.kind == FieldLabel::PsiBar && Lj.kind == FieldLabel::Psi)
    return s_minus_reversed(M, z, q, basis)(Lj.spinor, Li.spinor);
  return 0.0;  // same-kind contractions vanish
}

int count_kind(const std::vector<FieldLabel>& labels, FieldLabel::Kind k) {
  return static_cast<int>(std::count_if(labels.begin(), labels.end(),
                                        [&](const FieldLabel& L) { return L.kind == k; }));
}

// determinant of a k x k complex matrix (tiny sizes)
cplx small_det(std::vector<cplx> a, int n) {
  cplx det = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int row = col + 1; row < n; ++row)
      if (std::abs(a[row * n + col]) > std::abs(a[piv * n + col])) piv = row;
    if (a[piv * n + col] == cplx(0.0)) return 0.0;
    if (piv != col) {
      for (int k = 0; k < n; ++k) std::swap(a[piv * n + k], a[col * n + k]);
      det = -det;
    }
    det *= a[col * n + col];
    for (int row = col + 1; row < n; ++row) {
      const cplx f = a[row * n + col] / a[col * n + col];
      for (int k2 = col; k2 < n; ++k2) a[row * n + k2] -= f * a[col * n + k2];
    }
  }
  return det;
}

}  // namespace

cplx dirac_npoint(Mass M, const std::vector<CVec4>& points,
                  const std::vector<FieldLabel>& labels, const QuadratureConfig& q,
                  const GammaBasis& basis) {
  if (points.size() != labels.size())
    throw SizeMismatchError("dirac_npoint: point/label count mismatch");
  const int npsi = count_kind(labels, FieldLabel::Psi);
  const int nbar = count_kind(labels, FieldLabel::PsiBar);
  if (npsi != nbar) return 0.0;
  if (npsi == 0) return 1.0;

  std::vector<int> psi_slots, bar_slots;
  for (size_t s = 0; s < labels.size(); ++s)
    (labels[s].kind == FieldLabel::Psi ? psi_slots : bar_slots).push_back(static_cast<int>(s));

  // Pfaffian of the slot-antisymmetric contraction matrix, reduced to the
  // psi x psibar cross block: entries carry a minus sign when the psibar
  // slot precedes, and the block-sorting permutation contributes its parity
  // together with (-1)^{k(k-1)/2}
  const int k = npsi;
  std::vector<cplx> B(k * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      const int i = std::min(psi_slots[a], bar_slots[b]);
      const int j = std::max(psi_slots[a], bar_slots[b]);
      const double s = psi_slots[a] < bar_slots[b] ? 1.0 : -1.0;
      B[a * k + b] = s * slot_contraction(M, points, labels, i, j, q, basis);
    }

  int inversions = 0;  // of the sequence psi_slots ++ bar_slots
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      if (psi_slots[a] > bar_slots[b]) ++inversions;
  inversions += k * (k - 1) / 2;
  const double sign = (inversions % 2 == 0) ? 1.0 : -1.0;
  return sign * small_det(std::move(B), k);
}

namespace {

cplx enum_rec(Mass M, const std::vector<CVec4>& points, const std::vector<FieldLabel>& labels,
              std::vector<int>& alive, const QuadratureConfig& q, const GammaBasis& basis) {
  if (alive.empty()) return 1.0;
  const int first = alive.front();
  cplx acc = 0.0;
  for (size_t pos = 1; pos < alive.size(); ++pos) {
    const int j = alive[pos];
    if (labels[first].kind == labels[j].kind) continue;
    // moving the partner next to the first operator hops over pos-1 fermions
    const double sign = (pos - 1) % 2 == 0 ? 1.0 : -1.0;
    const cplx v = slot_contraction(M, points, labels, first, j, q, basis);
    if (v == cplx(0.0)) continue;
    std::vector<int> rest;
    rest.reserve(alive.size() - 2);
    for (size_t t = 1; t < alive.size(); ++t)
      if (t != pos) rest.push_back(alive[t]);
    acc += sign * v * enum_rec(M, points, labels, rest, q, basis);
  }
  return acc;
}

}  // namespace

cplx dirac_npoint_enum(Mass M, const std::vector<CVec4>& points,
                       const std::vector<FieldLabel>& labels, const QuadratureConfig& q,
                       const GammaBasis& basis) {
  if (points.size() != labels.size())
    throw SizeMismatchError("dirac_npoint_enum: point/label count mismatch");
  if (count_kind(labels, FieldLabel::Psi) != count_kind(labels, FieldLabel::PsiBar)) return 0.0;
  std::vector<int> alive(labels.size());
  for (size_t s = 0; s < labels.size(); ++s) alive[s] = static_cast<int>(s);
  return enum_rec(M, points, labels, alive, q, basis);
}

std::vector<int> charges_from_labels(const std::vector<FieldLabel>& labels) {
  std::vector<int> r(labels.size());
  for (size_t s = 0; s < labels.size(); ++s)
    r[s] = labels[s].kind == FieldLabel::Psi ? -1 : +1;
  return r;
}

cplx full_model_vev(double l, Mass m, Mass M, const std::vector<CVec4>& points,
                    const std::vector<int>& charges, const std::vector<FieldLabel>& labels,
                    const QuadratureConfig& q, const GammaBasis& basis) {
  const std::vector<int> derived = charges_from_labels(labels);
  if (!charges.empty() && charges != derived)
    throw PreconditionError("full_model_vev: charges inconsistent with labels");
  const cplx dirac = dirac_npoint(M, points, labels, q, basis);
  const cplx gauss = rho_vev(l, m, points, ChargeVector(derived), q);
  return dirac * gauss;
}

}  // namespace flqft
