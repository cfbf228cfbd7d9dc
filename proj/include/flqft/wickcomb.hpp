#pragma once

#include <array>
#include <optional>
#include <vector>

#include "flqft/complex4.hpp"

namespace flqft {

// Combinatorics of normal-ordered power series of a free field: the
// multi-index contraction expansion of vacuum expectation values, the
// brute-force pairing oracles that validate it, and coefficient-growth
// diagnostics.

// coefficients a_n multiplying :phi^n:/n!
struct WickSeries {
  std::vector<cplx> coeffs;

  // a_n = n!, so the represented field is exactly :phi^n:
  static WickSeries monomial(int n);
  // a_k = g^k up to max_degree, i.e. :e^{g phi}:
  static WickSeries exp_linear(cplx g, int max_degree);
  // a_{2k} = (i g)^k (2k)!/k!, odd coefficients zero, i.e. :e^{i g phi^2}:
  static WickSeries exp_square(cplx g, int max_degree);

  cplx coeff(int n) const {
    return (n >= 0 && n < static_cast<int>(coeffs.size())) ? coeffs[n] : cplx(0.0);
  }
  int max_degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

// symmetric pairwise contractions t_ij with zero diagonal; the optional
// derivative channel holds the (d_mu phi at i, phi at j) contraction,
// antisymmetric under swapping the tagged endpoint
struct PairingMatrix {
  int n = 0;
  std::vector<cplx> t;                         // n*n, t[i*n+j]
  std::vector<std::array<cplx, 4>> tp;          // empty unless derivative channels set
  bool has_deriv = false;

  explicit PairingMatrix(int size);
  cplx get(int i, int j) const { return t[i * n + j]; }
  void set(int i, int j, cplx v);                       // keeps symmetry, i != j
  std::array<cplx, 4> get_deriv(int i, int j) const;    // channel for (d phi at i, phi at j)
  void set_deriv(int i, int j, const std::array<cplx, 4>& v);  // stores -v at (j,i)
  double abs_offdiag_sum() const;  // sum_{i<j} |t_ij|
};

// truncated multi-index expansion: sum over r_ij >= 0, sum r_ij <= trunc, of
// A(R) T^R / R! with R_i = sum_j r_ij; deterministic enumeration by total
// degree ascending, lexicographic within a degree
cplx jaffe_vev(const std::vector<WickSeries>& series, const PairingMatrix& t, int trunc);

// partial sums of the same enumeration at every total degree 0..trunc
std::vector<cplx> jaffe_vev_partial_sums(const std::vector<WickSeries>& series,
                                         const PairingMatrix& t, int trunc);

// brute-force perfect-matching sum over labelled legs, same-point pairs
// forbidden; exact reference for jaffe_vev on monomial series.
// The enumeration budget is 16 total legs.
cplx monomial_vev_oracle(const std::vector<int>& degrees, const PairingMatrix& t,
                         bool parallel = false);

// one optional derivative-tagged leg per point; deriv_dir selects the
// channel direction mu. Inputs that force two tagged legs to pair raise
// MissingChannelError.
cplx mixed_monomial_vev_oracle(const std::vector<int>& degrees,
                               const std::vector<int>& deriv_flags, int deriv_dir,
                               const PairingMatrix& t, bool parallel = false);

// closed form exp(sum_{i<j} g_i g_j t_ij)
cplx exp_vev_closed(const std::vector<cplx>& g, const PairingMatrix& t);

struct SigmaGrowth {
  double sigma = 0.0;          // max over the window of (|a_n|^2/n!)^{1/n}
  double ell = 0.0;            // sqrt(sigma)/(2 pi)
};

SigmaGrowth sigma_growth(const WickSeries& series, int window_lo, int window_hi);

// 1/(2g) - sum_{i<j} |t_ij|; positive certifies absolute convergence of the
// expansion for the squared-exponential series with coupling g
double convergence_margin(double g, const PairingMatrix& t);

}  // namespace flqft
