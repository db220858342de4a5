#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ahls/metric.hpp"

using namespace ahls;
using namespace ahls::metric;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

MetricConfig bump_config() {
  MetricConfig c;
  c.A = 1.0;
  c.B = two_pi;
  c.params = {{"bump_height", 2.0}, {"bump_center", 0.35}, {"bump_width", 0.2},
              {"beta", 0.3},        {"beta2", 0.1}};
  return c;
}

template <class F>
Errc code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::config_error;
}

}  // namespace

TEST_CASE("pure hyperbolic model is valid and positive") {
  MetricConfig c;
  c.B = two_pi;
  const auto m = build_metric(c);
  for (double x : {1e-6, 0.1, 0.5, 0.9, 1.0 - 1e-6}) {
    CHECK(m.a(x) == doctest::Approx(1.0 / (x * x) + 1.0 / ((1 - x) * (1 - x))).epsilon(1e-15));
  }
  const auto rep = validate_ahls(m);
  CHECK(rep.passed);
  CHECK(rep.min_a_minus_b > 0.0);
}

TEST_CASE("default bump family validates at order 2") {
  const auto m = build_metric(bump_config());
  const auto rep = validate_ahls(m, {}, 2);
  CHECK(rep.passed);
  CHECK(rep.bounds.size() == 2u * 3u * 3u);
  for (const auto& b : rep.bounds) {
    CAPTURE(b.end);
    CAPTURE(b.alpha);
    CAPTURE(b.n);
    CHECK(std::isfinite(b.fitted_c.front()));
    CHECK(b.stable);
  }
}

TEST_CASE("large beta violates positivity near the middle") {
  auto c = bump_config();
  c.params = {{"beta", 10.0}};
  try {
    build_metric(c);
    FAIL("expected PositivityViolation");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::positivity_violation);
    const std::string msg = e.what();
    CHECK(msg.find("(x, y) = (0.5") != std::string::npos);
  }
}

TEST_CASE("one-ended model fails the far-end bound") {
  MetricConfig c;
  c.family = "one_ended";
  c.B = two_pi;
  CHECK(code_of([&] { build_metric(c); }) == Errc::validation_failed);
  const auto m = build_metric(c, {.validate = false});
  const auto rep = validate_ahls(m);
  CHECK_FALSE(rep.passed);
  CHECK_FALSE(rep.bounds_ok);
}

TEST_CASE("aperiodic b fails periodicity at order 0") {
  MetricConfig c;
  c.B = two_pi * 1.1;
  c.params = {{"beta", 0.3}, {"b_period", two_pi}};
  const auto m = build_metric(c, {.validate = false});
  const auto rep = validate_ahls(m);
  CHECK_FALSE(rep.periodicity_ok);
  CHECK(rep.periodicity_fail_order == 0);
  CHECK(code_of([&] { build_metric(c); }) == Errc::validation_failed);
}

TEST_CASE("inverse-square-root spike stays inside the envelope") {
  auto c = bump_config();
  c.params["spike_amp"] = 0.5;
  const auto m = build_metric(c, {.validate = false});
  CHECK(validate_ahls(m).passed);
}

TEST_CASE("wrong end coefficient diverges under refinement") {
  auto c = bump_config();
  c.params["c0"] = 1.5;
  const auto m = build_metric(c, {.validate = false});
  const auto rep = validate_ahls(m);
  CHECK_FALSE(rep.bounds_ok);
  bool grows = false;
  for (const auto& b : rep.bounds) {
    if (b.end == 0 && b.alpha == 0 && b.n == 0) grows = b.fitted_c.back() > 1.1 * b.fitted_c.front();
  }
  CHECK(grows);
}

TEST_CASE("configuration errors") {
  MetricConfig c;
  c.B = two_pi;
  c.family = "nope";
  CHECK(code_of([&] { build_metric(c); }) == Errc::invalid_family);
  c.family = "hyperbolic_bump";
  c.params = {{"bogus", 1.0}};
  CHECK(code_of([&] { build_metric(c); }) == Errc::invalid_family);
  c.params.clear();
  c.B = 0.0;
  CHECK(code_of([&] { build_metric(c); }) == Errc::config_error);
}

TEST_CASE("radial potential identities") {
  const auto m = build_metric(bump_config());
  for (double lambda : {0.5, 1.0, 2.0}) {
    const RadialPotential rp(m, lambda);
    const double kappa = lambda * lambda + 0.25;
    for (int i = 1; i < 200; ++i) {
      const double x = i / 200.0;
      CHECK(std::abs(rp.q(x) - (-kappa * m.a(x))) <= 1e-15 * kappa * m.a(x));
      const double scale = kappa * m.a(x);
      CHECK(std::abs(rp.q0(x) - (rp.q(x) + kappa / (x * x))) <= 1e-14 * scale);
      CHECK(std::abs(rp.q1(x) - (rp.q(x) + kappa / ((1 - x) * (1 - x)))) <= 1e-14 * kappa * m.a(x));
    }
  }
  const RadialPotential rp(m, 2.0);
  CHECK(rp.q(0.5).real() == doctest::Approx(-4.25 * m.a(0.5)).epsilon(1e-15));
  CHECK(code_of([&] { radial_potential(m, 0.0); }) == Errc::zero_energy);
}

TEST_CASE("pure model end potential is the far-end term") {
  MetricConfig c;
  c.B = two_pi;
  const auto m = build_metric(c);
  const RadialPotential rp(m, 1.0);
  for (double x : {1e-8, 1e-3, 0.2, 0.49}) {
    CHECK(rp.q0(x).real() == doctest::Approx(-1.25 / ((1 - x) * (1 - x))).epsilon(1e-14));
  }
}

TEST_CASE("x q0 is integrable near the left end") {
  const auto m = build_metric(bump_config());
  const RadialPotential rp(m, 1.0);
  using boost::math::quadrature::gauss_kronrod;
  double prev = 0.0;
  for (double lo : {1e-4, 1e-8, 1e-12}) {
    const double v = gauss_kronrod<double, 31>::integrate(
        [&](double x) { return x * std::abs(rp.q0(x)); }, lo, 0.5, 15, 1e-12);
    CHECK(std::isfinite(v));
    if (prev > 0.0) CHECK(std::abs(v - prev) < 1e-6 * v);
    prev = v;
  }
}

TEST_CASE("end area") {
  MetricConfig c;
  c.family = "one_ended";
  c.B = two_pi;
  const auto m = build_metric(c, {.validate = false});
  CHECK(end_area(m, 0.01) == doctest::Approx(two_pi * (100.0 - 2.0)).epsilon(1e-12));

  const auto mb = build_metric(bump_config());
  double prev_dev = 1.0;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    const double ratio = end_area(mb, eps) * eps / mb.B();
    const double dev = std::abs(ratio - 1.0);
    CHECK(dev < prev_dev);
    prev_dev = dev;
  }
  CHECK(prev_dev < 0.02);
  CHECK(end_area(mb, 0.5) == 0.0);
  CHECK(end_area(mb, 0.5) < mb.B() / 0.5);
  CHECK(code_of([&] { end_area(mb, 0.0); }) == Errc::domain_error);
}

TEST_CASE("gauge shift preserves a - b") {
  const auto m = build_metric(bump_config());
  const auto g = m.gauge_shifted(2.5);
  for (double x : {0.1, 0.4, 0.8}) {
    for (double y : {0.0, 1.0, 4.0}) {
      CHECK((g.a(x) - g.b(y)) == doctest::Approx(m.a(x) - m.b(y)).epsilon(1e-14));
    }
  }
  const auto s = m.a_shifted(2.5);
  CHECK(s.a(0.3) - s.b(1.0) == doctest::Approx(m.a(0.3) - m.b(1.0) + 2.5));
}

TEST_CASE("tabulated family") {
  auto c = bump_config();
  const auto ref = build_metric(c);
  MetricConfig t;
  t.family = "tabulated";
  t.A = 1.0;
  t.B = two_pi;
  const int np = 401;
  for (int i = 0; i < np; ++i) t.p_samples.push_back(ref.a_regular(double(i) / (np - 1)));
  const int nb = 64;
  for (int j = 0; j < nb; ++j) t.b_samples.push_back(ref.b(two_pi * j / nb));
  const auto m = build_metric(t);
  for (double x : {0.2, 0.35, 0.5}) CHECK(m.a_regular(x) == doctest::Approx(ref.a_regular(x)).epsilon(1e-6));
  for (double y : {0.3, 2.0, 5.5}) {
    CHECK(std::abs(m.b(y) - ref.b(y)) < 1e-13);
    CHECK(std::abs(m.b_derivative(y, 2) - ref.b_derivative(y, 2)) < 1e-11);
  }
  CHECK(std::abs(m.a_reg_function().derivative(0.35, 1) - ref.a_reg_function().derivative(0.35, 1)) < 1e-4);
}

TEST_CASE("symbolic derivatives agree with differences") {
  const auto m = build_metric(bump_config());
  const auto& f = m.a_reg_function();
  const double x = 0.31, h = 1e-4;
  CHECK(f.derivative(x, 1) == doctest::Approx((f(x + h) - f(x - h)) / (2 * h)).epsilon(1e-6));
  CHECK(f.derivative(x, 2) ==
        doctest::Approx((f.derivative(x + h, 1) - f.derivative(x - h, 1)) / (2 * h)).epsilon(1e-6));
}
