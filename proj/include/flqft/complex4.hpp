#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace flqft {

using cplx = std::complex<double>;

inline constexpr double PI = 3.14159265358979323846;
inline constexpr cplx I{0.0, 1.0};

// real four-vector, metric signature (+,-,-,-)
struct RVec4 {
  std::array<double, 4> c{};

  double& operator[](int mu) { return c[mu]; }
  double operator[](int mu) const { return c[mu]; }

  double spatial_norm() const { return std::sqrt(c[1] * c[1] + c[2] * c[2] + c[3] * c[3]); }
  double minkowski_sq() const { return c[0] * c[0] - c[1] * c[1] - c[2] * c[2] - c[3] * c[3]; }
};

inline RVec4 operator+(const RVec4& a, const RVec4& b) {
  return {{a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2], a.c[3] + b.c[3]}};
}
inline RVec4 operator-(const RVec4& a, const RVec4& b) {
  return {{a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2], a.c[3] - b.c[3]}};
}
inline RVec4 operator*(double s, const RVec4& a) {
  return {{s * a.c[0], s * a.c[1], s * a.c[2], s * a.c[3]}};
}

// four complex components z0..z3; the real/imaginary split carries the
// contour placement (imaginary offsets live in the time component)
struct CVec4 {
  std::array<cplx, 4> c{};

  cplx& operator[](int mu) { return c[mu]; }
  const cplx& operator[](int mu) const { return c[mu]; }

  static CVec4 from_real(const RVec4& x) {
    return {{cplx(x[0]), cplx(x[1]), cplx(x[2]), cplx(x[3])}};
  }
  // real point damped into the backward tube: z = (x0 - i eps, x1, x2, x3)
  static CVec4 damped(const RVec4& x, double eps) {
    return {{cplx(x[0], -eps), cplx(x[1]), cplx(x[2]), cplx(x[3])}};
  }

  cplx minkowski_sq() const {
    return c[0] * c[0] - c[1] * c[1] - c[2] * c[2] - c[3] * c[3];
  }
  // |x| from the real spatial parts; callers guarantee Im of spatial parts is 0
  double spatial_norm() const {
    const double x1 = c[1].real(), x2 = c[2].real(), x3 = c[3].real();
    return std::sqrt(x1 * x1 + x2 * x2 + x3 * x3);
  }
  double max_spatial_imag() const {
    return std::max({std::abs(c[1].imag()), std::abs(c[2].imag()), std::abs(c[3].imag())});
  }
};

inline CVec4 operator+(const CVec4& a, const CVec4& b) {
  return {{a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2], a.c[3] + b.c[3]}};
}
inline CVec4 operator-(const CVec4& a, const CVec4& b) {
  return {{a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2], a.c[3] - b.c[3]}};
}
inline CVec4 operator*(const cplx& s, const CVec4& a) {
  return {{s * a.c[0], s * a.c[1], s * a.c[2], s * a.c[3]}};
}

// non-negative mass in units of inverse length (natural units)
struct Mass {
  double value = 0.0;
  Mass() = default;
  Mass(double v);  // throws DomainError on negative input
};

}  // namespace flqft
