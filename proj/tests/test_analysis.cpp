#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ahls/analysis.hpp"
#include "ahls/specfun.hpp"

using namespace ahls;
using namespace ahls::analysis;

namespace {

constexpr double pi = std::numbers::pi;

metric::LiouvilleMetric bump() {
  metric::MetricConfig c;
  c.B = 2 * pi;
  c.params = {{"bump_height", 2.0}, {"bump_center", 0.35}, {"bump_width", 0.2}, {"beta", 0.3}, {"beta2", 0.1}};
  return metric::build_metric(c);
}

const ReggePoleSet& poles40() {
  static const ReggePoleSet s = find_regge_poles(radial::make_problem(bump(), 1.0), 40);
  return s;
}

}  // namespace

TEST_CASE("winding number of polynomials") {
  const auto f = [](cplx z) { return (z - cplx(0.3, 0.2)) * (z - cplx(-0.5, 0.1)) * (z - cplx(3.0, 3.0)); };
  const auto w = winding_number(f, {-1.0, 1.0, -1.0, 1.0});
  CHECK(w.winding == 2);
  CHECK(std::abs(w.raw - 2.0) < 1e-10);
  // midpoint-rule moment, used only as the polishing seed
  CHECK(std::abs(w.first_moment - cplx(-0.2, 0.3)) < 1e-3);
  CHECK(winding_number(f, {2.0, 2.5, 2.0, 2.5}).winding == 0);
  // contour through a zero
  CHECK_THROWS_AS(winding_number(f, {0.3, 1.0, 0.0, 1.0}), Error);
  // essential growth along the contour is resolved
  const auto g = [](cplx z) { return std::cosh(5.0 * z); };
  CHECK(winding_number(g, {-1.0, 1.0, 0.0, 2.0}).winding == 3);
}

TEST_CASE("regge poles follow the ladder") {
  const auto& s = poles40();
  REQUIRE(s.poles.size() >= 40);
  CHECK(s.p_alpha == 0);
  CHECK(s.p_beta == s.p_alpha);
  CHECK(s.predicted == static_cast<int>(s.poles.size()));
  for (size_t k = 0; k < s.poles.size(); ++k) {
    CAPTURE(k);
    const auto& p = s.poles[k];
    CHECK(p.winding == 1);
    CHECK(p.residual < 1e-8);
    CHECK(p.alpha.imag() > 0.0);
    if (k >= 10) {
      const double gap = s.poles[k].alpha.imag() - s.poles[k - 1].alpha.imag();
      CHECK(std::abs(gap - pi) < 0.01 * pi);
      CHECK(std::abs(p.alpha.real() - pi) < 0.01);
    }
    if (k > 0) {
      // real parts approach λπ/A from below
      CHECK(p.alpha.real() > s.poles[k - 1].alpha.real() - 1e-9);
      CHECK(p.alpha.real() < pi);
    }
  }
  REQUIRE_FALSE(s.off_ladder_winding.empty());
  for (int w : s.off_ladder_winding) CHECK(w == 0);
  // δ zeros sit near the imaginary axis, one per strip
  CHECK(s.small_zeros.size() == s.poles.size());
  // |Re β| is not monotone term by term; its tail envelope is
  std::vector<double> env(s.small_zeros.size());
  for (size_t k = env.size(); k-- > 0;) {
    env[k] = std::abs(s.small_zeros[k].alpha.real());
    if (k + 1 < env.size()) env[k] = std::max(env[k], env[k + 1]);
  }
  for (size_t k = 1; k < env.size(); ++k) CHECK(env[k] <= env[k - 1]);
  CHECK(env[0] > env[10]);
  CHECK(env[10] < 0.01);
}

TEST_CASE("regge pole is a zero of an independent evaluation") {
  const auto rp = radial::make_problem(bump(), 1.0);
  const auto& s = poles40();
  radial::ChannelOptions co;
  co.method = radial::Method::picard;
  const cplx a = s.poles[0].alpha;
  const double scale = std::abs(radial::channel_functions(rp, a + 0.5, co).Delta);
  const auto cf = radial::channel_functions(rp, a, co);
  CHECK(std::abs(cf.Delta) < 1e-8 * scale);
  CHECK(cf.at_regge_pole == (std::isnan(cf.M.real())));
}

TEST_CASE("pole count is independent of the strip height") {
  const auto rp = radial::make_problem(bump(), 1.0);
  PoleSearchOptions opt;
  opt.small_zeros = false;
  opt.off_ladder = false;
  const auto a = find_regge_poles(rp, 8, 0.0, opt);
  const auto b = find_regge_poles(rp, 8, 1.3, opt);
  for (int k = 0; k < 8; ++k) CHECK(std::abs(a.poles[k].alpha - b.poles[k].alpha) < 1e-10);
  CHECK_THROWS_AS(find_regge_poles(rp, 0), Error);
}

TEST_CASE("asymptotic model of Δ") {
  const auto rp = radial::make_problem(bump(), 1.0);
  const auto am = model_of(rp);
  double prev = 1e300;
  for (double mu : {10.0, 20.0, 40.0, 80.0}) {
    const cplx D = radial::characteristic(rp, mu);
    const double r = std::abs(D / asymptotic_model_eval(am, mu, ModelQuantity::Delta) - 1.0);
    CAPTURE(mu);
    CHECK(r < prev);
    prev = r;
    if (mu >= 40.0) CHECK(r < 0.05);
  }
  // along the imaginary axis, both signs agree where both are valid
  CHECK_THROWS_AS(asymptotic_model_eval(am, cplx(0.0, 30.0), ModelQuantity::Delta, -1), Error);
  CHECK_NOTHROW(asymptotic_model_eval(am, cplx(5.0, 30.0), ModelQuantity::Delta, -1));
  const cplx z(8.0, 30.0);
  const cplx D = radial::characteristic(rp, z);
  CHECK(std::abs(D / asymptotic_model_eval(am, z, ModelQuantity::Delta) - 1.0) < 0.05);
  const cplx d = radial::characteristic_small(rp, z);
  CHECK(std::abs(d / asymptotic_model_eval(am, z, ModelQuantity::delta_small) - 1.0) < 0.05);
}

TEST_CASE("model sectors") {
  const AsymptoticModel am{1.0, 1.0, 1.0, 1.0};
  try {
    asymptotic_model_eval(am, cplx(-1.0, 2.0), ModelQuantity::Delta);
    FAIL("expected SectorError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::sector_error);
  }
  CHECK_THROWS_AS(asymptotic_model_eval(am, 0.0, ModelQuantity::M), Error);
  CHECK_THROWS_AS(asymptotic_model_eval(am, cplx(0.0, -3.0), ModelQuantity::Delta, 1), Error);
  CHECK_THROWS_AS(asymptotic_model_eval(am, 1.0, ModelQuantity::Delta, 2), Error);
  // M is the ratio of the two leading terms
  for (cplx mu : {cplx(7.0, 0.0), cplx(3.0, 11.0), cplx(2.0, -9.0)}) {
    const cplx m = asymptotic_model_eval(am, mu, ModelQuantity::M);
    const cplx r = -asymptotic_model_eval(am, mu, ModelQuantity::delta_small) /
                   asymptotic_model_eval(am, mu, ModelQuantity::Delta);
    CHECK(std::abs(m - r) < 1e-12 * std::abs(r));
  }
}

TEST_CASE("model M tends to the bound and dΔ is the μ-derivative") {
  const cplx C10(0.7, 0.2);
  const AsymptoticModel am{1.5, 1.0, C10, 1.3};
  const double bound = 1.0 / (2.0 * 1.5 * std::norm(C10));
  CHECK(std::abs(std::abs(asymptotic_model_eval(am, 400.0, ModelQuantity::M)) - bound) < 1e-12 * bound);
  // stable far out, where cosh overflows
  CHECK(std::isfinite(std::abs(asymptotic_model_eval(am, 2000.0, ModelQuantity::M))));
  for (cplx mu : {cplx(4.0, 0.0), cplx(2.0, 5.0)}) {
    const double h = 1e-5;
    const cplx fd = (asymptotic_model_eval(am, mu + h, ModelQuantity::Delta) -
                     asymptotic_model_eval(am, mu - h, ModelQuantity::Delta)) /
                    (2 * h);
    const cplx d = asymptotic_model_eval(am, mu, ModelQuantity::dDelta);
    const cplx D = asymptotic_model_eval(am, mu, ModelQuantity::Delta);
    // the μ^{2iλ} prefactor contributes 2iλ/μ, small against A tanh
    CHECK(std::abs(fd - d - cplx(0.0, 3.0) / mu * D) < 1e-6 * std::abs(fd));
  }
  // numerical Δ'/Δ approaches A tanh(μA - λπ)
  const auto rp = radial::make_problem(bump(), 1.0);
  const double mu = 40.0, h = 1e-4;
  const cplx D = radial::characteristic(rp, mu);
  const cplx fd = (radial::characteristic(rp, mu + h) - radial::characteristic(rp, mu - h)) / (2 * h);
  CHECK(std::abs(fd / D - std::tanh(mu - pi)) < 0.1);
}

TEST_CASE("hadamard product") {
  const auto rp = radial::make_problem(bump(), 1.0);
  const auto& s = poles40();
  const cplx G = radial::characteristic(rp, 0.0);
  CHECK(hadamard_reconstruct(s, G, 0.0, 40) == G);
  CHECK(std::abs(hadamard_reconstruct(s, G, s.poles[0].alpha * s.poles[0].alpha, 40)) < 1e-12);
  CHECK_THROWS_AS(hadamard_reconstruct(s, G, 1.0, static_cast<int>(s.poles.size()) + 1), Error);
  for (double mu_sq : {4.0, 25.0, -9.0}) {
    const cplx D = radial::characteristic(rp, std::sqrt(cplx(mu_sq)));
    double prev = 1e300;
    CAPTURE(mu_sq);
    for (int n : {10, 20, 40}) {
      const double e = std::abs(hadamard_reconstruct(s, G, mu_sq, n) / D - 1.0);
      CHECK(e < prev);
      prev = e;
      const double et = std::abs(hadamard_reconstruct(s, G, mu_sq, n, true) / D - 1.0);
      CHECK(et < e);
    }
    if (mu_sq == 4.0) {
      CHECK(prev < 0.05);
      CHECK(std::abs(hadamard_reconstruct(s, G, mu_sq, 40, true) / D - 1.0) < 0.01);
    }
  }
}

TEST_CASE("bounds report") {
  const auto rp = radial::make_problem(bump(), 1.0);
  std::vector<double> re, im;
  for (int i = 0; i <= 60; ++i) re.push_back(0.5 * i);
  for (int i = 0; i <= 100; ++i) im.push_back(0.5 * i);
  const auto r = bounds_report(rp, re, im);
  CHECK(r.mu_star == doctest::Approx(pi));
  CHECK(r.tail_violations == 0);
  CHECK(r.last_decrease <= r.mu_star);
  CHECK(r.lower_margin > 0.0);
  CHECK(r.m_bound_margin > -1e-12);
  // bounded along the imaginary axis
  CHECK(std::abs(r.imag_growth) < 0.02);
  CHECK(std::isfinite(r.imag_max_delta));
  CHECK(std::isfinite(r.imag_max_delta_small));
  REQUIRE(r.imag_delta.size() == im.size());
  CHECK(r.imag_max_delta >= r.imag_delta.back());
}
