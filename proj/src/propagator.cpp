#include "flqft/propagator.hpp"

#include <algorithm>
#include <cmath>

#include "flqft/errors.hpp"
#include "flqft/parallel.hpp"

namespace flqft {

namespace {

constexpr double kSpatialFloor = 1e-8;   // |x| below this uses the r->0 limit
constexpr double kSingularFloor = 1e-6;  // pole guard for the decomposition

// D = [2(2pi)^2]^-1 Int_m^T e^{-i t z0} B(t,r) dt with
// B = 2 sin(s r)/r (r > 0), B = 2 s (r -> 0), s = sqrt(t^2 - m^2).
// The same pass accumulates the z0- and r-derivative integrands.
struct RadialIntegrals {
  cplx base = 0.0;   // against B
  cplx dt0 = 0.0;    // against -i t B
  cplx dr = 0.0;     // against dB/dr
  double abs_mass = 0.0;  // of the largest channel; sets the roundoff floor
  RadialIntegrals& operator+=(const RadialIntegrals& o) {
    base += o.base;
    dt0 += o.dt0;
    dr += o.dr;
    abs_mass += o.abs_mass;
    return *this;
  }
};

// accumulate one Gauss-Legendre panel of the three channels; t and s are
// given by the parametrization at each node, jac is dt/d(param)
struct PanelAccum {
  double r;
  RadialIntegrals acc;

  void add(double glw, double t, double s, double jac, cplx z0) {
    double B, dB;
    if (r < kSpatialFloor) {
      B = 2.0 * s;
      dB = 0.0;
    } else {
      const double sr = s * r;
      B = 2.0 * std::sin(sr) / r;
      if (sr < 1e-4) {
        // series for cos(w) - sin(w)/w avoids the cancellation
        dB = -2.0 * s * s * s * r / 3.0 * (1.0 - sr * sr / 10.0);
      } else {
        dB = 2.0 * (s * std::cos(sr) - std::sin(sr) / r) / r;
      }
    }
    // e^{-i t z0} for z0 = a + i b has magnitude e^{t b}
    const cplx ph =
        std::exp(t * z0.imag()) * cplx(std::cos(t * z0.real()), -std::sin(t * z0.real()));
    const cplx f = glw * jac * ph;
    acc.base += f * B;
    acc.dt0 += f * cplx(0.0, -t) * B;
    acc.dr += f * dB;
    acc.abs_mass += std::abs(f) * std::max({std::abs(B), t * std::abs(B), std::abs(dB)});
  }
};

// compensated cross-panel accumulation keeps the roundoff of strongly
// damped integrals near one ulp of their absolute mass
struct KahanTotal {
  cplx sum{0.0}, carry{0.0};
  void add(cplx v) {
    const cplx y = v - carry;
    const cplx t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// the substitution t = m cosh u removes the square-root edge at t = m;
// panels sized to the local oscillation frequency
RadialIntegrals radial_pass(double m, cplx z0, double r, double T, int refine, int nodes) {
  const GaussLegendre& gl = gauss_legendre(nodes);
  const double az = std::abs(z0.real());
  KahanTotal base, dt0, dr;
  double abs_mass = 0.0;
  auto flush = [&](PanelAccum& pa) {
    base.add(pa.acc.base);
    dt0.add(pa.acc.dt0);
    dr.add(pa.acc.dr);
    abs_mass += pa.acc.abs_mass;
    pa.acc = {};
  };
  PanelAccum pa{r, {}};
  if (m > 0.0) {
    const double U = std::acosh(std::max(T / m, 1.0 + 1e-12));
    double u = 0.0;
    long panels = 0;
    while (u < U) {
      const double fr = 1.0 + m * (std::sinh(std::min(u + 0.5, U)) + 1.0) * (az + r + 0.1);
      const double h = std::min({0.5 / refine, 2.0 * PI / fr / refine, U - u});
      const double mid = u + 0.5 * h, half = 0.5 * h;
      for (size_t i = 0; i < gl.x.size(); ++i) {
        const double uu = mid + half * gl.x[i];
        const double t = m * std::cosh(uu), s = m * std::sinh(uu);
        pa.add(gl.w[i] * half, t, s, s, z0);
      }
      flush(pa);
      u += h;
      if (++panels > 6000000)
        throw ConvergenceError("d_minus: quadrature panel budget exceeded");
    }
  } else {
    const double h0 = 2.0 * PI / (1.0 + az + r) / refine;
    const int npanels = std::max(1, static_cast<int>(std::ceil(T / h0)));
    const double w = T / npanels;
    for (int p = 0; p < npanels; ++p) {
      const double mid = (p + 0.5) * w, half = 0.5 * w;
      for (size_t i = 0; i < gl.x.size(); ++i) {
        const double t = mid + half * gl.x[i];
        pa.add(gl.w[i] * half, t, t, 1.0, z0);
      }
      flush(pa);
    }
  }
  RadialIntegrals out;
  out.base = base.sum;
  out.dt0 = dt0.sum;
  out.dr = dr.sum;
  out.abs_mass = abs_mass;
  return out;
}

double choose_cutoff(double m, double eps, double rel_tol, double configured) {
  if (configured > 0.0) return std::max(configured, m + 1.0 / eps);
  // tail of |B|, |tB|, |dB/dr| is below 2 t^2, so the remainder past T is
  // bounded by 2 e^{-eps T}(T^2/eps + 2T/eps^2 + 2/eps^3); iterate the
  // implied fixed point for T
  const double tol_abs =
      0.05 * rel_tol * std::min(1.0, bound_estimate(BoundKind::EpsilonForm, Mass(0.0), eps));
  double T = m + 10.0 / eps;
  for (int it = 0; it < 6; ++it) {
    const double poly = 2.0 * (T * T / eps + 2.0 * T / (eps * eps) + 2.0 / (eps * eps * eps));
    T = m + (std::log(std::max(poly, 1.0)) + std::log(1.0 / tol_abs)) / eps;
  }
  return T;
}

RadialIntegrals radial_integrals(double m, cplx z0, double r, const QuadratureConfig& q) {
  q.validate();
  const double eps = -z0.imag();
  if (!(eps > 0.0)) throw DomainError("d_minus requires Im z0 < 0");
  const double T = choose_cutoff(m, eps, q.rel_tol, q.cutoff);
  RadialIntegrals prev = radial_pass(m, z0, r, T, 1, q.nodes);
  const double scale =
      std::min(1.0, bound_estimate(BoundKind::EpsilonForm, Mass(0.0), eps)) * 8.0 * PI * PI;
  for (int level = 1; level <= 5; ++level) {
    RadialIntegrals cur = radial_pass(m, z0, r, T, 1 << level, q.nodes);
    const double diff = std::max({std::abs(cur.base - prev.base), std::abs(cur.dt0 - prev.dt0),
                                  std::abs(cur.dr - prev.dr)});
    const double ref = std::max({std::abs(cur.base), std::abs(cur.dt0), std::abs(cur.dr), scale});
    // a weakly damped oscillatory integral cannot beat the roundoff of its
    // absolute mass (large-argument phase evaluation); accept at that floor
    const double floor = 4096.0 * 2.2e-16 * cur.abs_mass;
    if (diff <= std::max(q.rel_tol * ref, floor)) return cur;
    prev = cur;
  }
  throw ConvergenceError("d_minus quadrature did not reach rel_tol at max refinement");
}

void check_point(const CVec4& z) {
  if (z.max_spatial_imag() > 0.0)
    throw DomainError("d_minus requires real spatial components");
}

}  // namespace

cplx d_minus(Mass m, const CVec4& z, const QuadratureConfig& q) {
  check_point(z);
  const double pref = 1.0 / (8.0 * PI * PI);
  return pref * radial_integrals(m.value, z[0], z.spatial_norm(), q).base;
}

PropagatorResult d_minus_with_grad(Mass m, const CVec4& z, const QuadratureConfig& q) {
  check_point(z);
  const double r = z.spatial_norm();
  const double pref = 1.0 / (8.0 * PI * PI);
  const RadialIntegrals ri = radial_integrals(m.value, z[0], r, q);
  PropagatorResult out;
  out.value = pref * ri.base;
  out.grad[0] = pref * ri.dt0;
  if (r < kSpatialFloor) {
    out.grad[1] = out.grad[2] = out.grad[3] = 0.0;  // radial symmetry
  } else {
    const cplx dr = pref * ri.dr;
    for (int k = 1; k < 4; ++k) out.grad[k] = (z[k].real() / r) * dr;
  }
  return out;
}

CVec4 d_minus_grad(Mass m, const CVec4& z, const QuadratureConfig& q) {
  return d_minus_with_grad(m, z, q).grad;
}

namespace {

// Linear-phase form of the slow-decay integral: with C = sqrt(x^2 - z^2)
// and v = (z cosh u + x sinh u)/C the integral becomes
//   Int e^{-i m C v} e^{-u(v)} dv / (sigma sqrt(1+v^2)),
// taken from v0 = z/C toward sigma*inf (sigma = sign x) and then down the
// ray Re v = const where the phase decays. Valid for |Re z| < |x| with a
// small imaginary part; continues the damped representation analytically.
cplx g_m_rotated(double m, cplx z, double x, const QuadratureConfig& q) {
  const double sigma = x > 0 ? 1.0 : -1.0;
  const cplx C = std::sqrt(cplx(x * x) - z * z);  // Re C > 0 here
  const cplx v0 = z / C;
  const cplx R0 = std::sqrt(1.0 + v0 * v0);
  const double V = std::max(2.0, 1.3 * std::abs(v0) + 1.0);
  const double tol_abs = 0.1 * q.rel_tol;
  const double S = std::log(1.0 / tol_abs) / (m * C.real()) + 1.0;

  // e^{-u(v)} = ((v0+R0)/(v+R))^sigma with R the branch of sqrt(1+v^2)
  // continued along the path
  auto integrate = [&](int refine) {
    cplx total = 0.0;
    cplx Rprev = R0;
    cplx vprev = v0;
    auto step_R = [&](cplx v) {
      const cplx ratio = (1.0 + v * v) / (1.0 + vprev * vprev);
      Rprev *= std::sqrt(ratio);
      vprev = v;
      return Rprev;
    };
    auto piece = [&](cplx v, cplx R) {
      const cplx phase = std::exp(-I * m * C * v);
      const cplx decay = sigma > 0 ? (v0 + R0) / (v + R) : (v + R) / (v0 + R0);
      return phase * decay / (sigma * R);
    };
    const GaussLegendre& gl = gauss_legendre(q.nodes);
    auto straight = [&](cplx a, cplx b) {
      const double len = std::abs(b - a);
      if (len == 0.0) return;
      const int np = refine * std::max(2, static_cast<int>(m * std::abs(C) * len / 4.0) + 2);
      const cplx dv = (b - a) / static_cast<double>(np);
      for (int p = 0; p < np; ++p) {
        cplx acc = 0.0;
        for (size_t i = 0; i < gl.x.size(); ++i) {
          const cplx v = a + (p + 0.5 + 0.5 * gl.x[i]) * dv;
          acc += gl.w[i] * piece(v, step_R(v));
        }
        total += 0.5 * dv * acc;
      }
    };
    // dogleg to the real axis and along it: a straight chord from v0 can
    // graze the branch points at +-i, the axis keeps unit clearance
    straight(v0, cplx(v0.real()));
    straight(cplx(v0.real()), cplx(sigma * V));
    // tail: descending ray sigma V - i s, s in [0, S], where the phase decays
    {
      const cplx a = cplx(sigma * V);
      const int np = refine * std::max(4, static_cast<int>(S * m * std::abs(C) / 4.0) + 2);
      const cplx dv = cplx(0.0, -S / np);
      for (int p = 0; p < np; ++p) {
        cplx acc = 0.0;
        for (size_t i = 0; i < gl.x.size(); ++i) {
          const cplx v = a + (p + 0.5 + 0.5 * gl.x[i]) * dv;
          acc += gl.w[i] * piece(v, step_R(v));
        }
        total += 0.5 * dv * acc;
      }
    }
    return total;
  };
  cplx prev = integrate(1);
  for (int level = 1; level <= 4; ++level) {
    const cplx cur = integrate(1 << level);
    if (std::abs(cur - prev) <= q.rel_tol * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  throw ConvergenceError("g_m rotated path did not reach rel_tol at max refinement");
}

}  // namespace

cplx g_m(Mass m, cplx z, double x, const QuadratureConfig& q) {
  q.validate();
  if (z.imag() > 0.0) throw DomainError("g_m requires Im z <= 0");
  if (m.value == 0.0) return 0.0;

  if (x != 0.0 && std::abs(z.real()) <= 0.98 * std::abs(x) &&
      std::abs(z.imag()) <= 0.1 * std::abs(x))
    return g_m_rotated(m.value, z, x, q);

  // substituted form: Int_0^inf exp(-i m (z cosh u + x sinh u)) e^{-u} du;
  // amplitude e^{-u + m cosh(u) Im z} truncates the range analytically
  const double mm = m.value;
  const double tol_abs = 0.1 * q.rel_tol;
  const double b = z.imag();  // <= 0
  auto log_amp = [&](double u) { return -u + mm * std::cosh(u) * b; };
  double U = std::log(1.0 / tol_abs);
  if (b < 0.0) {
    double lo = 0.0, hi = U;
    if (log_amp(hi) > std::log(tol_abs)) {
      // damping has not kicked in by hi; keep hi (pure e^{-u} bound suffices)
    } else {
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (log_amp(mid) > std::log(tol_abs))
          lo = mid;
        else
          hi = mid;
      }
      U = hi;
    }
  }

  // frequency of the phase grows like m (|z|+|x|) cosh u; size panels to it
  const double zx = std::abs(z) + std::abs(x);
  const double est_cost = mm * zx * std::cosh(U);
  if (est_cost > 5e6)
    throw ConvergenceError("g_m: undamped oscillatory tail exceeds the quadrature budget");

  auto f = [&](double u) {
    const cplx phase = -I * mm * (z * std::cosh(u) + x * std::sinh(u));
    return std::exp(phase - u);
  };
  auto sweep = [&](double refine) {
    cplx total = 0.0;
    double u = 0.0;
    while (u < U) {
      const double fr = 1.0 + mm * zx * std::cosh(std::min(u + 1.0, U));
      const double h = std::min(std::min(1.0, 2.0 * PI / fr) / refine, U - u);
      total += integrate_panels(f, u, u + h, h, q.nodes);
      u += h;
    }
    return total;
  };
  cplx prev = sweep(1.0);
  for (int level = 1; level <= 3; ++level) {
    const cplx cur = sweep(std::pow(2.0, level));
    if (std::abs(cur - prev) <= q.rel_tol * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  throw ConvergenceError("g_m quadrature did not reach rel_tol at max refinement");
}

cplx d_minus_decomposed(Mass m, const CVec4& z, const QuadratureConfig& q) {
  check_point(z);
  const cplx z0 = z[0];
  if (z0.imag() > 0.0) throw DomainError("d_minus_decomposed requires Im z0 <= 0");
  const double r = z.spatial_norm();
  if (std::min(std::abs(z0 - r), std::abs(z0 + r)) < kSingularFloor)
    throw SingularityError("d_minus_decomposed: z0 -+ |x| below the singularity floor");

  const double mm = m.value;
  const cplx pole = -std::exp(-I * mm * z0) / (4.0 * PI * PI * (z0 * z0 - r * r));
  if (mm == 0.0) return pole;
  const cplx gm = g_m(m, z0, -r, q);
  const cplx gp = g_m(m, z0, +r, q);
  const cplx rest = (mm * I / (8.0 * PI * PI)) * (-gm / (z0 - r) - gp / (z0 + r));
  return pole + rest;
}

cplx d_minus_boundary(Mass m, const RVec4& x, const QuadratureConfig& q) {
  const std::vector<double> eps = epsilon_ladder(q);
  std::vector<cplx> samples(eps.size());
  for (size_t k = 0; k < eps.size(); ++k)
    samples[k] = d_minus_decomposed(m, CVec4::damped(x, eps[k]), q);
  return extrapolate_to_zero(eps, samples);
}

PropagatorResult d_minus_boundary_with_grad(Mass m, const RVec4& x, const QuadratureConfig& q) {
  const std::vector<double> eps = epsilon_ladder(q);
  std::vector<PropagatorResult> samples(eps.size());
  for (size_t k = 0; k < eps.size(); ++k)
    samples[k] = d_minus_with_grad(m, CVec4::damped(x, eps[k]), q);
  PropagatorResult out;
  std::vector<cplx> vals(eps.size());
  for (size_t k = 0; k < eps.size(); ++k) vals[k] = samples[k].value;
  out.value = extrapolate_to_zero(eps, vals);
  for (int mu = 0; mu < 4; ++mu) {
    for (size_t k = 0; k < eps.size(); ++k) vals[k] = samples[k].grad[mu];
    out.grad[mu] = extrapolate_to_zero(eps, vals);
  }
  return out;
}

double ell_fundamental(Mass m, double l) {
  if (l < 0.0) throw DomainError("ell_fundamental requires l >= 0");
  const double mm = m.value;
  return (1.0 / (2.0 * PI)) *
         (l * l * mm * std::sqrt(2.0) / 8.0 +
          l * std::sqrt(2.0 + 2.0 * (mm / 8.0) * (mm / 8.0) * l * l));
}

double dist_to_lightcone(const RVec4& x) {
  const double r = x.spatial_norm();
  const double t = std::abs(x[0]);
  return t >= r ? 0.0 : (r - t) / std::sqrt(2.0);
}

double epsilon_deform(double ell, const RVec4& x) {
  if (!(ell > 0.0)) throw DomainError("epsilon_deform requires ell > 0");
  const double d = dist_to_lightcone(x);
  if (d <= ell / std::sqrt(2.0)) return ell;
  if (d >= ell) return 0.0;
  return std::sqrt(2.0 * ell * ell - 2.0 * d * d);
}

double bound_estimate(BoundKind kind, Mass m, double param) {
  if (!(param > 0.0)) throw DomainError("bound_estimate requires a positive parameter");
  switch (kind) {
    case BoundKind::EpsilonForm:
      return 1.0 / (4.0 * PI * PI * param * param);
    case BoundKind::AForm:
      return (1.0 / (4.0 * PI * PI)) *
             (1.0 / (param * param) + m.value * std::sqrt(2.0) * PI / (4.0 * param));
  }
  throw DomainError("bound_estimate: unknown kind");
}

double min_cone_distance_a(const RVec4& x, double eps) {
  const double r = x.spatial_norm();
  const cplx z0(x[0], -eps);
  return std::min(std::abs(z0 - r), std::abs(z0 + r));
}

BoundSweepResult propagator_bound_sweep(Mass m, double eps, std::span<const RVec4> grid,
                                        const QuadratureConfig& q, bool parallel) {
  const double bound = bound_estimate(BoundKind::EpsilonForm, m, eps);
  std::vector<double> ratio(grid.size(), 0.0);
  parallel_for_index(
      static_cast<std::int64_t>(grid.size()),
      [&](std::int64_t i) {
        const cplx D = d_minus(m, CVec4::damped(grid[i], eps), q);
        ratio[i] = std::abs(D) / bound;
      },
      parallel);
  BoundSweepResult out;
  out.count = static_cast<int>(grid.size());
  for (double rr : ratio) {
    out.max_ratio = std::max(out.max_ratio, rr);
    if (rr > 1.0) ++out.violations;
  }
  return out;
}

FundamentalLengthSweepResult fundamental_length_sweep(Mass m, double l,
                                                      std::span<const RVec4> grid,
                                                      std::span<const double> eps,
                                                      double guard,
                                                      const QuadratureConfig& q,
                                                      bool parallel) {
  const double threshold = ell_fundamental(m, l) * (1.0 + guard);
  struct Entry {
    RVec4 x;
    double eps;
  };
  std::vector<Entry> accepted;
  for (const RVec4& x : grid)
    for (double e : eps)
      if (min_cone_distance_a(x, e) > threshold) accepted.push_back({x, e});

  std::vector<double> margin(accepted.size(), 1.0);
  parallel_for_index(
      static_cast<std::int64_t>(accepted.size()),
      [&](std::int64_t i) {
        const cplx D = d_minus(m, CVec4::damped(accepted[i].x, accepted[i].eps), q);
        margin[i] = 1.0 - 2.0 * l * l * std::abs(D);
      },
      parallel);
  FundamentalLengthSweepResult out;
  out.count = static_cast<int>(accepted.size());
  for (double mg : margin) {
    out.min_margin = std::min(out.min_margin, mg);
    if (mg <= 0.0) ++out.violations;
  }
  return out;
}

}  // namespace flqft
