#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ahls/scattering.hpp"
#include "ahls/specfun.hpp"
#include "mp_oracle.hpp"

using namespace ahls;
using namespace ahls::scattering;

namespace {

constexpr double pi = std::numbers::pi;

metric::LiouvilleMetric make(std::map<std::string, double> params) {
  metric::MetricConfig c;
  c.B = 2 * pi;
  c.params = std::move(params);
  return metric::build_metric(c);
}

metric::LiouvilleMetric bump() {
  return make({{"bump_height", 2.0}, {"bump_center", 0.35}, {"bump_width", 0.2}, {"beta", 0.3}, {"beta2", 0.1}});
}

ScatteringOperator build(const metric::LiouvilleMetric& m, double lambda, int n, cplx C10 = 1.0, cplx C11 = 1.0,
                         bool cross = true) {
  const auto s = angular::solve_angular(m, lambda, n - 1);
  ScatteringOptions opt;
  opt.cross_check = cross;
  return assemble_operator(radial::make_problem(m, lambda, C10, C11), s, opt);
}

}  // namespace

TEST_CASE("omega ratio") {
  for (double l : {0.1, 0.5, 1.0, 2.0, 7.5}) {
    CHECK(std::abs(std::abs(omega_ratio(l)) - 1.0) < 1e-12);
    CHECK(std::abs(omega_ratio(l) * omega_ratio(-l) - 1.0) < 1e-12);
  }
  const cplx want = oracle::to_double(oracle::gamma(oracle::mpc(1, -1)) / oracle::gamma(oracle::mpc(1, 1)));
  CHECK(std::abs(omega_ratio(1.0) - want) < 1e-13);
  CHECK(std::abs(scattering_factor(1.0) - cplx(0.0, 2.0) * want) < 1e-13);
  try {
    omega_ratio(0.0);
    FAIL("expected ZeroEnergy");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::zero_energy);
  }
}

TEST_CASE("unitarity over the first 50 channels") {
  for (double lambda : {0.5, 1.0}) {
    // channel 0 is imaginary for this family
    const auto op = build(bump(), lambda, 51);
    int real = 0;
    for (const auto& c : op.channels()) {
      CAPTURE(lambda);
      CAPTURE(c.channel.n);
      if (!c.real_channel) continue;
      ++real;
      CHECK(c.checks.t_plus_l < 1e-6);
      CHECK(c.checks.t_plus_r < 1e-6);
      CHECK(c.checks.cross < 1e-6);
      CHECK(c.checks.s_unitary < 1e-6);
      CHECK(c.checks.relation < 1e-6);
      CHECK(c.checks.delta_relation < 1e-6);
      CHECK(c.unitarity_defect() < 1e-6);
      CHECK(c.checks.delta_times_t < 1e-8);
      CHECK(c.checks.l_from_m < 1e-8);
      CHECK(c.checks.cross_check < 1e-8);
      CHECK(c.checks.r_conjugate < 1e-8);
      CHECK(c.checks.r_modulus < 1e-8);
    }
    CHECK(real >= 50);
    CHECK(op.identity_defect() < 1e-8);
  }
}

TEST_CASE("operator identities channel by channel") {
  const double lambda = 1.0;
  const cplx C10(0.8, 0.3), C11(1.7, -0.4);
  const auto op = build(bump(), lambda, 20, C10, C11, false);
  const cplx g = specfun::complex_gamma(cplx(1.0, -lambda)) / specfun::complex_gamma(cplx(1.0, lambda));
  const cplx kt = cplx(0.0, 2.0 * lambda) * C10 * C11 * g;
  const cplx kl = cplx(0.0, 2.0 * lambda) * C10 * C10 * g;
  const auto D = op.delta_eigenvalues();
  const auto M = op.m_eigenvalues();
  for (int n = 0; n < op.size(); ++n) {
    const auto& c = op.channels()[n];
    CHECK(std::abs(D[n] * c.T - kt) < 1e-8 * std::abs(kt));
    CHECK(std::abs(c.L + kl * M[n]) < 1e-8);
    if (c.real_channel) CHECK(c.unitarity_defect() < 1e-6);
  }
}

TEST_CASE("seed constants: T, L, R are invariant, Δ scales") {
  const auto m = bump();
  const auto a = build(m, 1.0, 12, 1.0, 1.0, false);
  const auto b = build(m, 1.0, 12, 2.0, 1.0, false);
  const auto c = build(m, 1.0, 12, cplx(0.0, 1.0), cplx(3.0, 4.0), false);
  for (int n = 0; n < a.size(); ++n) {
    const auto &x = a.channels()[n], &y = b.channels()[n], &z = c.channels()[n];
    CHECK(std::abs(y.funcs.Delta - 2.0 * x.funcs.Delta) < 1e-10 * std::abs(y.funcs.Delta));
    CHECK(std::abs(y.T - x.T) < 1e-10);
    CHECK(std::abs(y.L - x.L) < 1e-10);
    CHECK(std::abs(y.R - x.R) < 1e-10);
    CHECK(std::abs(z.T - x.T) < 1e-10);
    CHECK(std::abs(z.L - x.L) < 1e-10);
    CHECK(std::abs(z.R - x.R) < 1e-10);
  }
}

TEST_CASE("unitarity defect is invariant under rephasing the constants") {
  const auto m = bump();
  const auto a = unitarity_defect(build(m, 1.0, 16, 1.0, 1.0, false));
  const auto b = unitarity_defect(build(m, 1.0, 16, std::polar(1.0, 0.7), std::polar(1.0, -2.1), false));
  REQUIRE(a.size() == b.size());
  for (size_t n = 1; n < a.size(); ++n) {
    CHECK(a[n] < 1e-6);
    CHECK(std::abs(a[n] - b[n]) < 1e-10);
  }
  CHECK(std::isnan(a[0]));
  CHECK(std::isnan(b[0]));
}

TEST_CASE("M bound and tail monotonicity") {
  for (double lambda : {0.5, 1.0, 2.0}) {
    const cplx C10 = lambda == 2.0 ? cplx(0.6, 0.2) : cplx(1.0);
    const auto op = build(bump(), lambda, 50, C10, 1.0, false);
    const double bound = 1.0 / (2.0 * lambda * std::norm(C10));
    for (const auto& c : op.channels()) {
      if (!c.real_channel) continue;
      CHECK(std::abs(c.funcs.M) <= bound * (1.0 + 1e-12));
      CHECK(std::abs(c.funcs.Delta) >= 2.0 * lambda * std::abs(C10) * (1.0 - 1e-12));
    }
    const auto t = m_tail(op, 20);
    CAPTURE(lambda);
    CHECK(t.bound == doctest::Approx(bound));
    CHECK(t.channels >= 10);
    CHECK(t.violations == 0);
    CHECK(t.bound_violations == 0);
    CHECK(t.top_gap >= -1e-12);
    CHECK(t.top_gap < 0.05);
  }
}

TEST_CASE("degenerate channels share T, L, R") {
  const auto op = build(make({}), 1.0, 21, 1.0, 1.0, false);
  for (int n = 1; n < 21; n += 2) {
    const auto &a = op.channels()[n], &b = op.channels()[n + 1];
    REQUIRE(a.channel.mu_sq == b.channel.mu_sq);
    CHECK(a.T == b.T);
    CHECK(a.L == b.L);
    CHECK(a.R == b.R);
    CHECK(a.channel.n != b.channel.n);
  }
}

TEST_CASE("imaginary channels are flagged and excluded from unitarity") {
  const auto m = make({{"b_shift", -3.0}, {"beta", 0.3}});
  const auto op = build(m, 1.0, 10);
  int imaginary = 0;
  const auto d = unitarity_defect(op);
  for (int n = 0; n < op.size(); ++n) {
    const auto& c = op.channels()[n];
    if (c.channel.mu_sq < 0.0) {
      ++imaginary;
      CHECK_FALSE(c.real_channel);
      CHECK(std::isnan(d[n]));
      CHECK(std::isnan(c.unitarity_defect()));
      CHECK(std::isfinite(std::abs(c.T)));
      CHECK(c.checks.delta_times_t < 1e-8);
      CHECK(c.checks.cross_check < 1e-8);
    } else {
      CHECK(d[n] < 1e-6);
    }
  }
  CHECK(imaginary >= 1);
}

TEST_CASE("mismatched lambda is rejected") {
  const auto m = bump();
  const auto s = angular::solve_angular(m, 1.0, 5);
  CHECK_THROWS_AS(assemble_operator(radial::make_problem(m, 2.0), s), Error);
}
