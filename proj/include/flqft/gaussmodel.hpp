#pragma once

#include <functional>
#include <vector>

#include "flqft/complex4.hpp"
#include "flqft/propagator.hpp"
#include "flqft/quadrature.hpp"
#include "flqft/wickcomb.hpp"

namespace flqft {

// Gaussian closed form for the squared-exponential normal-ordered fields:
// the pair matrix A, the branch-tracked (det A)^{-1/2}, its expansion
// cross-checks, the correlator-level derivative identity, the linear
// momentum/coordinate maps and the two-point contour functional.

// charges r_j = +-1; r_j = -1 is the field with the +i l^2 phi^2 exponent,
// r_j = +1 its conjugate
struct ChargeVector {
  std::vector<int> r;
  explicit ChargeVector(std::vector<int> values);
  int size() const { return static_cast<int>(r.size()); }
  int operator[](int j) const { return r[j]; }
};

struct AMatrix {
  int n = 0;
  std::vector<cplx> a;  // n*n, unit diagonal, symmetric

  explicit AMatrix(int size);
  cplx get(int j, int k) const { return a[j * n + k]; }
  void set(int j, int k, cplx v);  // off-diagonal, symmetric
};

// per-point imaginary-time offsets y_j^0; path j is R^4 + i(y_j^0, 0,0,0)
struct ContourSpec {
  std::vector<double> y0;
  // contour points for given real parts; y0 must increase with the index
  std::vector<CVec4> points(const std::vector<RVec4>& x) const;
};

// record of the square-root continuation along A(s) = I + s(A - I)
struct BranchState {
  double log_abs_det = 0.0;
  double total_arg = 0.0;  // unwrapped argument of det along the path
  int steps = 0;
};

cplx phase_h(int r);  // e^{i r pi/4}, r = +-1

AMatrix build_A(double l, Mass m, const std::vector<CVec4>& points, const ChargeVector& r,
                const QuadratureConfig& q);

cplx det_inv_sqrt(const AMatrix& A);
cplx det_inv_sqrt_traced(const AMatrix& A, BranchState& state);

// (det A)^{-1/2} at the given contour points
cplx rho_vev(double l, Mass m, const std::vector<CVec4>& points, const ChargeVector& r,
             const QuadratureConfig& q);

// truncated multi-index expansion of the same expectation value;
// margin_out (optional) receives the convergence margin for g = l^2
cplx rho_vev_series(double l, Mass m, const std::vector<CVec4>& points, const ChargeVector& r,
                    int trunc, const QuadratureConfig& q, double* margin_out = nullptr);

// det A - 1 + a_{j,j+1}^2: the part of the determinant with no dependence
// on the adjacent-pair entry alone (j is 0-based, pairs (j, j+1))
cplx q_perturbation(const AMatrix& A, int j);

// min over pairs of 1 - 2 l^2 |D(z_j - z_k)|; positive certifies the
// holomorphy condition for the inverse square root on the contour
double holomorphy_margin(double l, Mass m, const std::vector<CVec4>& points,
                         const QuadratureConfig& q);

// residual of the correlator-level derivative identity at separation zeta:
// analytic d/dzeta^mu of (1 - 4 l^4 D^2)^{-1/2} minus the truncated mixed
// expansion with channels t = D, t' = d_mu D; trunc bounds the total
// contraction degree of the expansion terms
cplx deq_residual(double l, Mass m, const CVec4& zeta, int mu, int trunc,
                  const QuadratureConfig& q);

// the expansion side alone, given the two channels (validated against
// mixed_monomial_vev_oracle at enumerable orders)
cplx deq_series_side(double l, cplx t, cplx tprime, int trunc);

// linear maps p = chi(q): p_k = q_{k-1} - q_k (k < n), p_n = q_{n-1};
// inverse q_k = sum_{j>k} p_j
std::vector<RVec4> chi_map(const std::vector<RVec4>& q);
std::vector<RVec4> chi_inv(const std::vector<RVec4>& p);

// the zeta/z change of variables: zeta_0 = z_1, zeta_j = z_{j+1} - z_j,
// inverse z_j = sum_{k<j} zeta_k
std::vector<CVec4> zeta_from_z(const std::vector<CVec4>& z);
std::vector<CVec4> z_from_zeta(const std::vector<CVec4>& zeta);

// holomorphic test function of the relative variable with a Gaussian
// envelope scale used for node placement
struct ContourTestFunction {
  std::function<cplx(const CVec4&)> f;
  double envelope_width = 1.0;

  static ContourTestFunction gaussian(double width);
  static ContourTestFunction zero();
};

struct Quad4Config {
  int nodes_per_axis = 12;  // Gauss-Hermite order per axis
};

// two-point functional on the shifted plane Im zeta0 = -contour_shift:
// integral over the plane of (det A2(zeta))^{-1/2} f(zeta); Cauchy-invariant
// under admissible shift changes. MarginError if the holomorphy margin is
// not positive on the node set.
cplx apply_functional_2pt(double l, Mass m, const ChargeVector& r,
                          const ContourTestFunction& testfn, double contour_shift,
                          const QuadratureConfig& q, const Quad4Config& q4,
                          bool parallel = true);

}  // namespace flqft
