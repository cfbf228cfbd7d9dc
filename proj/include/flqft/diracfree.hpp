#pragma once

#include <string>
#include <vector>

#include "flqft/complex4.hpp"
#include "flqft/gaussmodel.hpp"
#include "flqft/propagator.hpp"

namespace flqft {

// Free Dirac two-point functions, the fermionic contraction combinatorics,
// and the product-field n-point functions (Dirac factor times the Gaussian
// determinant factor).

struct SpinorMatrix {
  std::array<cplx, 16> m{};
  cplx& operator()(int a, int b) { return m[a * 4 + b]; }
  const cplx& operator()(int a, int b) const { return m[a * 4 + b]; }
  cplx trace() const { return m[0] + m[5] + m[10] + m[15]; }
  double frobenius() const;
};

SpinorMatrix operator+(const SpinorMatrix& a, const SpinorMatrix& b);
SpinorMatrix operator*(const SpinorMatrix& a, const SpinorMatrix& b);
SpinorMatrix operator*(cplx s, const SpinorMatrix& a);

struct GammaBasis {
  std::array<SpinorMatrix, 4> gamma;  // gamma^0 .. gamma^3, metric (+,-,-,-)
};

// standard representation: gamma^0 = diag(1,1,-1,-1), gamma^k off-diagonal Pauli
const GammaBasis& dirac_basis();

struct GammaCheckReport {
  bool ok = true;
  double max_residual = 0.0;
  std::string detail;  // empty when ok
};

// verifies the anticommutators and gamma^0 hermiticity; throws AlgebraError
// naming the first violated relation when any residual exceeds tol
GammaCheckReport gamma_check(const GammaBasis& basis, double tol = 1e-12);

// S^(-)(z) = (i gamma^mu d_mu + M) D_M^(-)(z): the (psi(z1) psibar(z2))
// contraction at z = z1 - z2
SpinorMatrix s_minus(Mass M, const CVec4& z, const QuadratureConfig& q,
                     const GammaBasis& basis = dirac_basis());

// contraction with psibar preceding psi, as a function of (earlier - later):
// (i gamma^mu d_mu - M) D_M^(-)(z)
SpinorMatrix s_minus_reversed(Mass M, const CVec4& z, const QuadratureConfig& q,
                              const GammaBasis& basis = dirac_basis());

// closed forms in terms of an already-evaluated propagator value+gradient
SpinorMatrix s_minus_from(const PropagatorResult& pr, double M,
                          const GammaBasis& basis = dirac_basis());
SpinorMatrix s_minus_reversed_from(const PropagatorResult& pr, double M,
                                   const GammaBasis& basis = dirac_basis());

struct FieldLabel {
  enum Kind { Psi, PsiBar } kind;
  int spinor;  // 0..3
};

// fermionic contraction sum over psi <-> psibar bijections with crossing
// parity; equal kind counts required, otherwise the value is 0.
// Computed as the pattern-signed determinant of the propagator matrix
// between psi-slots (rows) and psibar-slots (columns).
cplx dirac_npoint(Mass M, const std::vector<CVec4>& points,
                  const std::vector<FieldLabel>& labels, const QuadratureConfig& q,
                  const GammaBasis& basis = dirac_basis());

// brute-force signed enumeration of the same sum; reference implementation
cplx dirac_npoint_enum(Mass M, const std::vector<CVec4>& points,
                       const std::vector<FieldLabel>& labels, const QuadratureConfig& q,
                       const GammaBasis& basis = dirac_basis());

// product-field expectation: Dirac factor times the Gaussian determinant
// factor, with the charge of each point fixed by its label (psi -> -1,
// psibar -> +1). The charges argument, when non-empty, must agree.
cplx full_model_vev(double l, Mass m, Mass M, const std::vector<CVec4>& points,
                    const std::vector<int>& charges, const std::vector<FieldLabel>& labels,
                    const QuadratureConfig& q, const GammaBasis& basis = dirac_basis());

// the label -> charge dictionary
std::vector<int> charges_from_labels(const std::vector<FieldLabel>& labels);

}  // namespace flqft
