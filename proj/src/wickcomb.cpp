#include "flqft/wickcomb.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "flqft/errors.hpp"
#include "flqft/parallel.hpp"

namespace flqft {

namespace {
constexpr int kLegBudget = 16;

double factorial(int n) { return std::tgamma(n + 1.0); }
}  // namespace

WickSeries WickSeries::monomial(int n) {
  if (n < 0) throw DomainError("monomial degree must be >= 0");
  WickSeries s;
  s.coeffs.assign(n + 1, 0.0);
  s.coeffs[n] = factorial(n);
  return s;
}

WickSeries WickSeries::exp_linear(cplx g, int max_degree) {
  WickSeries s;
  s.coeffs.resize(max_degree + 1);
  cplx p = 1.0;
  for (int k = 0; k <= max_degree; ++k) {
    s.coeffs[k] = p;
    p *= g;
  }
  return s;
}

WickSeries WickSeries::exp_square(cplx g, int max_degree) {
  WickSeries s;
  s.coeffs.assign(max_degree + 1, 0.0);
  for (int k = 0; 2 * k <= max_degree; ++k)
    s.coeffs[2 * k] = std::pow(I * g, k) * factorial(2 * k) / factorial(k);
  return s;
}

PairingMatrix::PairingMatrix(int size) : n(size), t(size * size, 0.0) {
  if (size <= 0) throw SizeMismatchError("PairingMatrix size must be positive");
}

void PairingMatrix::set(int i, int j, cplx v) {
  if (i == j) throw IndexError("PairingMatrix: diagonal is fixed to zero");
  t[i * n + j] = v;
  t[j * n + i] = v;
}

std::array<cplx, 4> PairingMatrix::get_deriv(int i, int j) const {
  if (!has_deriv) throw MissingChannelError("PairingMatrix: derivative channels not set");
  return tp[i * n + j];
}

void PairingMatrix::set_deriv(int i, int j, const std::array<cplx, 4>& v) {
  if (i == j) throw IndexError("PairingMatrix: diagonal derivative channel is void");
  if (tp.empty()) tp.assign(n * n, {});
  has_deriv = true;
  tp[i * n + j] = v;
  tp[j * n + i] = {-v[0], -v[1], -v[2], -v[3]};
}

double PairingMatrix::abs_offdiag_sum() const {
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s += std::abs(get(i, j));
  return s;
}

namespace {

// enumeration of pair multi-indices r_ij (i<j) with fixed total degree,
// lexicographic; visit(r) is called for each
template <class V>
void enumerate_compositions(int npairs, int total, std::vector<int>& r, int pos, int left,
                            const V& visit) {
  if (pos == npairs - 1) {
    r[pos] = left;
    visit(r);
    return;
  }
  for (int v = left; v >= 0; --v) {
    r[pos] = v;
    enumerate_compositions(npairs, total, r, pos + 1, left - v, visit);
  }
}

struct PairIdx {
  int i, j;
};

std::vector<PairIdx> pair_list(int n) {
  std::vector<PairIdx> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
  return pairs;
}

}  // namespace

std::vector<cplx> jaffe_vev_partial_sums(const std::vector<WickSeries>& series,
                                         const PairingMatrix& t, int trunc) {
  const int n = static_cast<int>(series.size());
  if (n != t.n) throw SizeMismatchError("jaffe_vev: series count != pairing matrix size");
  if (trunc < 0) throw DomainError("jaffe_vev: trunc must be >= 0");
  const std::vector<PairIdx> pairs = pair_list(n);
  const int npairs = static_cast<int>(pairs.size());

  std::vector<cplx> partial(trunc + 1, 0.0);
  std::vector<int> R(n);
  cplx degree_sum = 0.0;

  if (npairs == 0) {
    // single point: only R = 0 contributes
    for (int d = 0; d <= trunc; ++d) partial[d] = series[0].coeff(0);
    return partial;
  }

  std::vector<int> r(npairs, 0);
  cplx running = 0.0;
  for (int d = 0; d <= trunc; ++d) {
    degree_sum = 0.0;
    enumerate_compositions(npairs, d, r, 0, d, [&](const std::vector<int>& rr) {
      std::fill(R.begin(), R.end(), 0);
      for (int p = 0; p < npairs; ++p) {
        R[pairs[p].i] += rr[p];
        R[pairs[p].j] += rr[p];
      }
      cplx term = 1.0;
      for (int k = 0; k < n; ++k) {
        const cplx a = series[k].coeff(R[k]);
        if (a == cplx(0.0)) {
          term = 0.0;
          break;
        }
        term *= a;
      }
      if (term == cplx(0.0)) return;
      for (int p = 0; p < npairs; ++p) {
        if (rr[p] == 0) continue;
        const cplx tij = t.get(pairs[p].i, pairs[p].j);
        term *= std::pow(tij, rr[p]) / factorial(rr[p]);
        if (term == cplx(0.0)) break;
      }
      degree_sum += term;
    });
    running += degree_sum;
    partial[d] = running;
  }
  return partial;
}

cplx jaffe_vev(const std::vector<WickSeries>& series, const PairingMatrix& t, int trunc) {
  return jaffe_vev_partial_sums(series, t, trunc).back();
}

namespace {

struct Leg {
  int point;
  bool deriv;
};

// recursive perfect-matching sum; legs paired lowest-first so the
// summation order is fixed
cplx match_sum(std::vector<Leg>& legs, std::vector<bool>& used, size_t first,
               const PairingMatrix& t, int deriv_dir) {
  while (first < legs.size() && used[first]) ++first;
  if (first == legs.size()) return 1.0;
  used[first] = true;
  cplx acc = 0.0;
  for (size_t j = first + 1; j < legs.size(); ++j) {
    if (used[j] || legs[j].point == legs[first].point) continue;
    cplx v;
    if (legs[first].deriv && legs[j].deriv) {
      used[first] = false;
      throw MissingChannelError(
          "mixed_monomial_vev_oracle: derivative-derivative contraction unsupported");
    } else if (legs[first].deriv) {
      v = t.get_deriv(legs[first].point, legs[j].point)[deriv_dir];
    } else if (legs[j].deriv) {
      v = t.get_deriv(legs[j].point, legs[first].point)[deriv_dir];
    } else {
      v = t.get(legs[first].point, legs[j].point);
    }
    if (v == cplx(0.0)) continue;
    used[j] = true;
    acc += v * match_sum(legs, used, first + 1, t, deriv_dir);
    used[j] = false;
  }
  used[first] = false;
  return acc;
}

cplx oracle_impl(const std::vector<int>& degrees, const std::vector<int>& deriv_flags,
                 int deriv_dir, const PairingMatrix& t, bool parallel) {
  if (static_cast<int>(degrees.size()) != t.n)
    throw SizeMismatchError("vev oracle: degree count != pairing matrix size");
  int total = 0;
  for (size_t p = 0; p < degrees.size(); ++p) {
    if (degrees[p] < 0) throw DomainError("vev oracle: negative degree");
    total += degrees[p];
  }
  if (total > kLegBudget) throw BudgetError("vev oracle: more than 16 legs");
  if (total % 2 != 0) return 0.0;
  if (total == 0) return 1.0;

  std::vector<Leg> legs;
  for (size_t p = 0; p < degrees.size(); ++p) {
    const int nder = deriv_flags.empty() ? 0 : deriv_flags[p];
    if (nder < 0 || nder > 1)
      throw DomainError("vev oracle: at most one derivative leg per point");
    if (nder > degrees[p]) throw DomainError("vev oracle: more tagged legs than degree");
    for (int k = 0; k < degrees[p]; ++k)
      legs.push_back({static_cast<int>(p), k < nder});
  }

  if (!parallel) {
    std::vector<bool> used(legs.size(), false);
    return match_sum(legs, used, 0, t, deriv_dir);
  }

  // parallel over the first leg's partner; fixed combine order keeps the
  // result identical to the serial recursion
  std::vector<size_t> partners;
  for (size_t j = 1; j < legs.size(); ++j)
    if (legs[j].point != legs[0].point) partners.push_back(j);
  return chunked_sum<cplx>(
      static_cast<std::int64_t>(partners.size()), 1,
      [&](std::int64_t idx) -> cplx {
        const size_t j = partners[static_cast<size_t>(idx)];
        cplx v;
        if (legs[0].deriv && legs[j].deriv)
          throw MissingChannelError(
              "mixed_monomial_vev_oracle: derivative-derivative contraction unsupported");
        if (legs[0].deriv)
          v = t.get_deriv(legs[0].point, legs[j].point)[deriv_dir];
        else if (legs[j].deriv)
          v = t.get_deriv(legs[j].point, legs[0].point)[deriv_dir];
        else
          v = t.get(legs[0].point, legs[j].point);
        if (v == cplx(0.0)) return 0.0;
        std::vector<bool> used(legs.size(), false);
        used[0] = used[j] = true;
        return v * match_sum(legs, used, 1, t, deriv_dir);
      },
      true);
}

}  // namespace

cplx monomial_vev_oracle(const std::vector<int>& degrees, const PairingMatrix& t,
                         bool parallel) {
  return oracle_impl(degrees, {}, 0, t, parallel);
}

cplx mixed_monomial_vev_oracle(const std::vector<int>& degrees,
                               const std::vector<int>& deriv_flags, int deriv_dir,
                               const PairingMatrix& t, bool parallel) {
  if (deriv_flags.size() != degrees.size())
    throw SizeMismatchError("mixed oracle: flag count != degree count");
  if (deriv_dir < 0 || deriv_dir > 3) throw IndexError("mixed oracle: direction out of range");
  bool any = false;
  for (int f : deriv_flags) any = any || f > 0;
  if (any && !t.has_deriv)
    throw MissingChannelError("mixed oracle: derivative channels missing from pairing matrix");
  return oracle_impl(degrees, deriv_flags, deriv_dir, t, parallel);
}

cplx exp_vev_closed(const std::vector<cplx>& g, const PairingMatrix& t) {
  if (static_cast<int>(g.size()) != t.n)
    throw SizeMismatchError("exp_vev_closed: coupling count != pairing matrix size");
  cplx s = 0.0;
  for (int i = 0; i < t.n; ++i)
    for (int j = i + 1; j < t.n; ++j) s += g[i] * g[j] * t.get(i, j);
  return std::exp(s);
}

SigmaGrowth sigma_growth(const WickSeries& series, int window_lo, int window_hi) {
  if (window_lo > window_hi || window_lo < 1)
    throw EmptyWindowError("sigma_growth: empty or invalid window");
  // degrees beyond the stored prefix are zero and cannot raise the max
  SigmaGrowth out;
  for (int n = window_lo; n <= std::min(window_hi, series.max_degree()); ++n) {
    const double an = std::abs(series.coeff(n));
    if (an == 0.0) continue;
    // (|a_n|^2/n!)^{1/n} in log space
    const double est = std::exp((2.0 * std::log(an) - std::lgamma(n + 1.0)) / n);
    out.sigma = std::max(out.sigma, est);
  }
  out.ell = std::sqrt(out.sigma) / (2.0 * PI);
  return out;
}

double convergence_margin(double g, const PairingMatrix& t) {
  if (!(g > 0.0)) throw DomainError("convergence_margin requires g > 0");
  return 1.0 / (2.0 * g) - t.abs_offdiag_sum();
}

}  // namespace flqft
