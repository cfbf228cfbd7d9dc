#include "flqft/gaussmodel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "flqft/errors.hpp"
#include "flqft/parallel.hpp"

namespace flqft {

namespace {

// determinant of a small dense complex matrix by LU with partial pivoting
cplx det_dense(std::vector<cplx> a, int n) {
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
      for (int k = col; k < n; ++k) a[row * n + k] -= f * a[col * n + k];
    }
  }
  return det;
}

cplx det_scaled(const AMatrix& A, double s) {
  std::vector<cplx> m(A.a);
  const int n = A.n;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (j != k) m[j * n + k] *= s;
  return det_dense(std::move(m), n);
}

constexpr int kBranchSteps = 64;

}  // namespace

ChargeVector::ChargeVector(std::vector<int> values) : r(std::move(values)) {
  for (int v : r)
    if (v != 1 && v != -1) throw DomainError("ChargeVector entries must be +-1");
}

AMatrix::AMatrix(int size) : n(size), a(size * size, 0.0) {
  if (size <= 0) throw SizeMismatchError("AMatrix size must be positive");
  for (int j = 0; j < n; ++j) a[j * n + j] = 1.0;
}

void AMatrix::set(int j, int k, cplx v) {
  if (j == k) throw IndexError("AMatrix: diagonal is fixed to one");
  a[j * n + k] = v;
  a[k * n + j] = v;
}

std::vector<CVec4> ContourSpec::points(const std::vector<RVec4>& x) const {
  if (x.size() != y0.size()) throw SizeMismatchError("ContourSpec: offset/point count mismatch");
  for (size_t j = 1; j < y0.size(); ++j)
    if (!(y0[j] > y0[j - 1]))
      throw DomainError("ContourSpec: offsets must increase with the index");
  std::vector<CVec4> out(x.size());
  for (size_t j = 0; j < x.size(); ++j) {
    out[j] = CVec4::from_real(x[j]);
    out[j][0] += cplx(0.0, y0[j]);
  }
  return out;
}

cplx phase_h(int r) {
  if (r != 1 && r != -1) throw DomainError("phase_h requires r = +-1");
  return std::exp(I * (r * PI / 4.0));
}

AMatrix build_A(double l, Mass m, const std::vector<CVec4>& points, const ChargeVector& r,
                const QuadratureConfig& q) {
  const int n = static_cast<int>(points.size());
  if (n != r.size()) throw SizeMismatchError("build_A: point/charge count mismatch");
  AMatrix A(n);
  if (l == 0.0) return A;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      const cplx D = d_minus(m, points[j] - points[k], q);
      A.set(j, k, 2.0 * phase_h(r[j]) * phase_h(r[k]) * l * l * D);
    }
  return A;
}

cplx det_inv_sqrt_traced(const AMatrix& A, BranchState& state) {
  // continue the square root from value 1 at the identity along the
  // off-diagonal scaling path; steps with an ambiguous phase jump are
  // bisected until the winding is resolved or a zero crossing is found
  double arg = 0.0;
  cplx prev = 1.0;  // det at s = 0
  int evals = 0;
  auto advance = [&](auto&& self, double s0, double s1, int depth) -> void {
    const cplx d = det_scaled(A, s1);
    ++evals;
    const double jump = std::arg(d / prev);
    if (std::abs(d) < 1e-12 || (std::abs(jump) > 0.8 && depth >= 40))
      throw BranchError("det_inv_sqrt: determinant crossed zero on the scaling path",
                        0.5 * (s0 + s1));
    if (std::abs(jump) > 0.8) {
      const double mid = 0.5 * (s0 + s1);
      self(self, s0, mid, depth + 1);
      self(self, mid, s1, depth + 1);
      return;
    }
    arg += jump;
    prev = d;
  };
  for (int k = 1; k <= kBranchSteps; ++k)
    advance(advance, static_cast<double>(k - 1) / kBranchSteps,
            static_cast<double>(k) / kBranchSteps, 0);
  state.log_abs_det = std::log(std::abs(prev));
  state.total_arg = arg;
  state.steps = evals;
  return std::exp(-0.5 * cplx(state.log_abs_det, state.total_arg));
}

cplx det_inv_sqrt(const AMatrix& A) {
  BranchState st;
  return det_inv_sqrt_traced(A, st);
}

cplx rho_vev(double l, Mass m, const std::vector<CVec4>& points, const ChargeVector& r,
             const QuadratureConfig& q) {
  return det_inv_sqrt(build_A(l, m, points, r, q));
}

cplx rho_vev_series(double l, Mass m, const std::vector<CVec4>& points, const ChargeVector& r,
                    int trunc, const QuadratureConfig& q, double* margin_out) {
  const int n = static_cast<int>(points.size());
  if (n != r.size()) throw SizeMismatchError("rho_vev_series: point/charge count mismatch");
  PairingMatrix t(n);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) t.set(j, k, d_minus(m, points[j] - points[k], q));
  if (margin_out) *margin_out = l > 0.0 ? convergence_margin(l * l, t) : 1.0;
  std::vector<WickSeries> series;
  series.reserve(n);
  for (int j = 0; j < n; ++j)
    series.push_back(WickSeries::exp_square(cplx(-r[j] * l * l), trunc + 2));
  return jaffe_vev(series, t, trunc);
}

cplx q_perturbation(const AMatrix& A, int j) {
  if (j < 0 || j + 1 >= A.n) throw IndexError("q_perturbation: adjacent pair out of range");
  const cplx ajj1 = A.get(j, j + 1);
  return det_dense(A.a, A.n) - 1.0 + ajj1 * ajj1;
}

double holomorphy_margin(double l, Mass m, const std::vector<CVec4>& points,
                         const QuadratureConfig& q) {
  double margin = 1.0;
  if (l == 0.0) return margin;
  const int n = static_cast<int>(points.size());
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      const cplx D = d_minus(m, points[j] - points[k], q);
      margin = std::min(margin, 1.0 - 2.0 * l * l * std::abs(D));
    }
  return margin;
}

cplx deq_series_side(double l, cplx t, cplx tprime, int trunc) {
  // term j carries contraction degree 2j+2:
  // 2 i l^2 ((i l^2)^j / j!) ((-i l^2)^{j+1} / (j+1)!) (2j+2)! t' t^{2j+1}
  const cplx il2 = I * l * l;
  cplx sum = 0.0;
  for (int j = 0; 2 * j + 2 <= trunc; ++j) {
    cplx term = 2.0 * il2 * tprime * std::pow(t, 2 * j + 1);
    term *= std::pow(il2, j) / std::tgamma(j + 1.0);
    term *= std::pow(-il2, j + 1) / std::tgamma(j + 2.0);
    term *= std::tgamma(2 * j + 3.0);
    sum += term;
  }
  return sum;
}

cplx deq_residual(double l, Mass m, const CVec4& zeta, int mu, int trunc,
                  const QuadratureConfig& q) {
  if (mu < 0 || mu > 3) throw IndexError("deq_residual: direction out of range");
  if (l == 0.0) return 0.0;
  const PropagatorResult pr = d_minus_with_grad(m, zeta, q);
  const cplx t = pr.value, tp = pr.grad[mu];
  const double l4 = l * l * l * l;
  const cplx analytic = 4.0 * l4 * t * tp * std::pow(1.0 - 4.0 * l4 * t * t, -1.5);
  return analytic - deq_series_side(l, t, tp, trunc);
}

std::vector<RVec4> chi_map(const std::vector<RVec4>& q) {
  const size_t n = q.size();
  if (n == 0) throw SizeMismatchError("chi_map: empty input");
  std::vector<RVec4> p(n);
  for (size_t k = 0; k + 1 < n; ++k) p[k] = q[k] - q[k + 1];
  p[n - 1] = q[n - 1];
  return p;
}

std::vector<RVec4> chi_inv(const std::vector<RVec4>& p) {
  const size_t n = p.size();
  if (n == 0) throw SizeMismatchError("chi_inv: empty input");
  std::vector<RVec4> q(n);
  RVec4 acc{};
  for (size_t k = n; k-- > 0;) {
    acc = acc + p[k];
    q[k] = acc;
  }
  return q;
}

std::vector<CVec4> zeta_from_z(const std::vector<CVec4>& z) {
  const size_t n = z.size();
  if (n == 0) throw SizeMismatchError("zeta_from_z: empty input");
  std::vector<CVec4> zeta(n);
  zeta[0] = z[0];
  for (size_t j = 1; j < n; ++j) zeta[j] = z[j] - z[j - 1];
  return zeta;
}

std::vector<CVec4> z_from_zeta(const std::vector<CVec4>& zeta) {
  const size_t n = zeta.size();
  if (n == 0) throw SizeMismatchError("z_from_zeta: empty input");
  std::vector<CVec4> z(n);
  CVec4 acc{};
  for (size_t j = 0; j < n; ++j) {
    acc = acc + zeta[j];
    z[j] = acc;
  }
  return z;
}

ContourTestFunction ContourTestFunction::gaussian(double width) {
  ContourTestFunction tf;
  tf.envelope_width = width;
  tf.f = [width](const CVec4& zeta) {
    cplx s = 0.0;
    for (int mu = 0; mu < 4; ++mu) s += zeta[mu] * zeta[mu];
    return std::exp(-s / (2.0 * width * width));
  };
  return tf;
}

ContourTestFunction ContourTestFunction::zero() {
  ContourTestFunction tf;
  tf.f = [](const CVec4&) { return cplx(0.0); };
  return tf;
}

namespace {

struct GaussHermite {
  std::vector<double> x, w;  // nodes/weights for weight e^{-x^2}
};

const GaussHermite& gauss_hermite(int n) {
  static std::map<int, GaussHermite> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GaussHermite gh;
  gh.x.resize(n);
  gh.w.resize(n);
  // Newton on H_n with downward-recurrence initial guesses
  const double c = std::pow(PI, -0.25);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x;
    if (i == 0)
      x = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    else if (i == 1)
      x = gh.x[n - 1] - 1.14 * std::pow(n, 0.426) / gh.x[n - 1];
    else if (i == 2)
      x = 1.86 * gh.x[n - 2] - 0.86 * gh.x[n - 1];
    else if (i == 3)
      x = 1.91 * gh.x[n - 3] - 0.91 * gh.x[n - 2];
    else
      x = 2.0 * gh.x[n - i] - gh.x[n - i + 1];
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // orthonormal recurrence keeps the values in range
      double p0 = c, p1 = c * std::sqrt(2.0) * x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = x * std::sqrt(2.0 / k) * p1 - std::sqrt((k - 1.0) / k) * p0;
        p0 = p1;
        p1 = p2;
      }
      pp = std::sqrt(2.0 * n) * p0;
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    gh.x[n - 1 - i] = x;
    gh.x[i] = -x;
    gh.w[n - 1 - i] = 2.0 / (pp * pp);
    gh.w[i] = gh.w[n - 1 - i];
  }
  return cache.emplace(n, std::move(gh)).first->second;
}

}  // namespace

cplx apply_functional_2pt(double l, Mass m, const ChargeVector& r,
                          const ContourTestFunction& testfn, double contour_shift,
                          const QuadratureConfig& q, const Quad4Config& q4, bool parallel) {
  if (r.size() != 2) throw SizeMismatchError("apply_functional_2pt: two charges required");
  if (!(contour_shift > 0.0)) throw MarginError("apply_functional_2pt: shift must be positive");
  const int N = q4.nodes_per_axis;
  const GaussHermite& gh = gauss_hermite(N);
  const double w = testfn.envelope_width;
  const cplx hh = 2.0 * phase_h(r[0]) * phase_h(r[1]) * l * l;

  // real-plane nodes matched to the Gaussian envelope: x = sqrt(2) w u
  std::vector<double> node(N), weight(N);
  for (int i = 0; i < N; ++i) {
    node[i] = std::sqrt(2.0) * w * gh.x[i];
    weight[i] = std::sqrt(2.0) * w * gh.w[i] * std::exp(gh.x[i] * gh.x[i]);
  }

  const std::int64_t total = static_cast<std::int64_t>(N) * N * N * N;
  struct Acc {
    cplx sum{0.0};
    double min_margin = 1.0;
    Acc& operator+=(const Acc& o) {
      sum += o.sum;
      min_margin = std::min(min_margin, o.min_margin);
      return *this;
    }
  };
  const Acc acc = chunked_sum<Acc>(
      total, N,
      [&](std::int64_t idx) -> Acc {
        const int i0 = static_cast<int>(idx / (N * N * N));
        const int i1 = static_cast<int>((idx / (N * N)) % N);
        const int i2 = static_cast<int>((idx / N) % N);
        const int i3 = static_cast<int>(idx % N);
        CVec4 zeta{{cplx(node[i0], -contour_shift), cplx(node[i1]), cplx(node[i2]),
                    cplx(node[i3])}};
        Acc a;
        cplx kernel = 1.0;
        if (l != 0.0) {
          const cplx D = d_minus(m, zeta, q);
          a.min_margin = 1.0 - 2.0 * l * l * std::abs(D);
          const cplx a12 = hh * D;
          kernel = std::pow(1.0 - a12 * a12, -0.5);
        }
        a.sum = weight[i0] * weight[i1] * weight[i2] * weight[i3] * kernel * testfn.f(zeta);
        return a;
      },
      parallel);
  if (acc.min_margin <= 0.0)
    throw MarginError("apply_functional_2pt: holomorphy margin not positive on the node set");
  return acc.sum;
}

}  // namespace flqft
