#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "flqft/errors.hpp"
#include "flqft/localize1d.hpp"

using namespace flqft;

namespace {
StripTestFunction exp_function() {
  StripTestFunction s;
  s.f = [](cplx z) { return std::exp(z); };
  s.half_width = std::numeric_limits<double>::infinity();
  s.name = "exp";
  return s;
}
}  // namespace

TEST_CASE("holomorphy spot check") {
  const StripTestFunction sech = StripTestFunction::sech();
  std::vector<cplx> inside = {cplx(0.0), cplx(1.0, 0.8), cplx(-2.0, -1.2), cplx(0.5, 1.4)};
  CHECK(holomorphy_residual(sech, inside) < 1e-6);
}

TEST_CASE("Taylor coefficients of exp") {
  const std::vector<cplx> c = taylor_coeffs(exp_function(), 20, 2.0);
  double fact = 1.0;
  for (int n = 0; n <= 20; ++n) {
    if (n > 0) fact *= n;
    CHECK(std::abs(c[n] - 1.0 / fact) < 1e-12);
  }
}

TEST_CASE("Taylor coefficients of sech") {
  const StripTestFunction sech = StripTestFunction::sech();
  const std::vector<cplx> c = taylor_coeffs(sech, 6, 1.2);
  CHECK(std::abs(c[0] - 1.0) < 1e-12);
  CHECK(std::abs(c[1]) < 1e-12);
  CHECK(std::abs(c[2] + 0.5) < 1e-12);
  CHECK(std::abs(c[3]) < 1e-12);
  CHECK(std::abs(c[4] - 5.0 / 24.0) < 1e-12);

  CHECK_THROWS_AS(taylor_coeffs(sech, 10, 2.0), RadiusError);  // beyond the strip
  CHECK_THROWS_AS(taylor_coeffs(sech, 10, 0.0), RadiusError);
}

TEST_CASE("coefficients are radius-independent inside the strip") {
  const StripTestFunction sech = StripTestFunction::sech();
  const std::vector<cplx> a = taylor_coeffs(sech, 20, 0.5);
  const std::vector<cplx> b = taylor_coeffs(sech, 20, 1.0);
  for (int n = 0; n <= 20; ++n) CHECK(std::abs(a[n] - b[n]) < 1e-10);
}

TEST_CASE("shift zero reproduces f(0) at every order") {
  const StripTestFunction sech = StripTestFunction::sech();
  const std::vector<cplx> partials = delta_series_partials(sech, 0.0, 40);
  // the ring aliasing at 0.9 half-width limits the constant term
  for (const cplx& s : partials) CHECK(std::abs(s - 1.0) < 1e-10);
}

TEST_CASE("shift below the half-width converges to the translated value") {
  const StripTestFunction sech = StripTestFunction::sech();
  const cplx target = 1.0 / std::cosh(-1.0);
  const cplx S60 = delta_series_apply(sech, 1.0, 60);
  CHECK(std::abs(S60 - target) < 1e-8);
  CHECK(std::abs(target.real() - 0.6480542736638854) < 1e-15);

  // entire test functions converge for every shift
  for (double a : {0.5, 1.0, 2.0, -2.0}) {
    const cplx got = delta_series_apply(exp_function(), a, 60);
    CHECK(std::abs(got - std::exp(cplx(-a))) < 1e-8);
    const cplx got2 = delta_series_apply(StripTestFunction::gaussian(), a, 60);
    CHECK(std::abs(got2 - std::exp(-cplx(a) * cplx(a))) < 1e-8);
  }
}

TEST_CASE("shift beyond the half-width blows up") {
  const StripTestFunction sech = StripTestFunction::sech();
  const std::vector<cplx> partials = delta_series_partials(sech, 2.0, 60);
  double peak = 0.0;
  for (const cplx& s : partials) peak = std::max(peak, std::abs(s));
  CHECK(peak > 1e6);
}

TEST_CASE("error trend is geometric with ratio |a|/w") {
  const StripTestFunction sech = StripTestFunction::sech();
  const double w = sech.half_width;

  // below the width: errors shrink over N in [20, 60]
  {
    const std::vector<cplx> p = delta_series_partials(sech, 1.0, 60);
    const cplx target = 1.0 / std::cosh(-1.0);
    const double e20 = std::abs(p[20] - target);
    const double e40 = std::abs(p[40] - target);
    const double e60 = std::abs(p[60] - target);
    CHECK(e40 < e20);
    CHECK(e60 < e40);
    // ratio roughly (|a|/w)^20
    const double expect = std::pow(1.0 / w, 20);
    CHECK(e40 / e20 < 10.0 * expect);
    CHECK(e40 / e20 > 0.01 * expect);
  }

  // above the width: magnitudes grow over N in [20, 60]
  {
    const std::vector<cplx> p = delta_series_partials(sech, 2.0, 60);
    CHECK(std::abs(p[40]) > std::abs(p[20]));
    CHECK(std::abs(p[60]) > std::abs(p[40]));
  }
}

TEST_CASE("localization report") {
  const StripTestFunction sech = StripTestFunction::sech();
  // the geometric rates near the boundary need a deep window to resolve
  const LocalizationReport rep = localization_report(sech, {1.0, 1.4, 1.7, 2.0}, 400);
  CHECK(rep.half_width == doctest::Approx(PI / 2.0));
  REQUIRE(rep.entries.size() == 4);
  CHECK(rep.entries[0].verdict == LocalizationVerdict::Converged);
  CHECK(rep.entries[1].verdict == LocalizationVerdict::Converged);
  // the verdict flips across the boundary pi/2 = 1.5708
  CHECK(rep.entries[2].verdict == LocalizationVerdict::Diverging);
  CHECK(rep.entries[3].verdict == LocalizationVerdict::Diverging);
  for (const auto& e : rep.entries) CHECK(!e.interpretation.empty());

  // the shallow window of the acceptance run still separates 1.0 from 2.0
  const LocalizationReport sh = localization_report(sech, {1.0, 2.0}, 60);
  CHECK(sh.entries[0].verdict == LocalizationVerdict::Converged);
  CHECK(sh.entries[1].verdict == LocalizationVerdict::Diverging);

  // entire function: everything converges
  const LocalizationReport all = localization_report(StripTestFunction::gaussian(),
                                                     {0.5, 1.0, 1.5, 2.0}, 60);
  for (const auto& e : all.entries) CHECK(e.verdict == LocalizationVerdict::Converged);
}
