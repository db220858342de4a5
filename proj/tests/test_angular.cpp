#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "ahls/angular.hpp"

using namespace ahls;
using namespace ahls::angular;
using metric::MetricConfig;

namespace {

constexpr double pi = std::numbers::pi;

metric::LiouvilleMetric make(std::map<std::string, double> params, double B = 2 * pi) {
  MetricConfig c;
  c.B = B;
  c.params = std::move(params);
  return metric::build_metric(c);
}

metric::LiouvilleMetric bump() {
  return make({{"bump_height", 2.0}, {"bump_center", 0.35}, {"bump_width", 0.2}, {"beta", 0.3}, {"beta2", 0.1}});
}

}  // namespace

TEST_CASE("free case reproduces the periodic Laplacian") {
  for (double B : {2 * pi, 1.0, 3.3}) {
    const auto s = solve_angular(make({}, B), 1.0, 40);
    REQUIRE(s.size() == 41);
    for (int n = 0; n <= 40; ++n) {
      const int k = (n + 1) / 2;
      const double w = 2 * pi * k / B;
      CAPTURE(n);
      CHECK(std::abs(s.eigenvalues[n] - w * w) < 1e-12 * std::max(1.0, w * w));
    }
    for (int n = 1; n <= 39; n += 2) CHECK(s.cluster[n] == s.cluster[n + 1]);
    CHECK(s.cluster[0] != s.cluster[1]);
  }
}

TEST_CASE("constant b shifts the free spectrum") {
  const double c = 0.7, lambda = 1.3;
  const auto s = solve_angular(make({{"b_shift", c}}), lambda, 20);
  for (int n = 0; n <= 20; ++n) {
    const double k = (n + 1) / 2;
    CHECK(std::abs(s.eigenvalues[n] - (k * k + (lambda * lambda + 0.25) * c)) < 1e-12 * std::max(1.0, k * k));
  }
}

TEST_CASE("cosine potential matches a dense solve at four times the resolution") {
  const auto m = make({{"beta_c", 1.0}});
  const auto s = solve_angular(m, 1.0, 30);
  const int K = 2 * s.modes();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(galerkin_matrix(m, 1.0, K), Eigen::EigenvaluesOnly);
  for (int n = 0; n <= 30; ++n) {
    CAPTURE(n);
    CHECK(std::abs(s.eigenvalues[n] - es.eigenvalues()(n)) < 1e-9 * std::max(1.0, std::abs(es.eigenvalues()(n))));
  }
}

TEST_CASE("eigenpairs satisfy the equation and are orthonormal") {
  const auto m = bump();
  const auto s = solve_angular(m, 1.0, 60);
  CHECK(gram_defect(s) < 1e-10);
  for (int n = 0; n <= 60; ++n) {
    CAPTURE(n);
    CHECK(residual(s, m, n) <= 1e-8);
  }
  // orthonormality also by quadrature in y
  const int N = 512;
  for (int i : {0, 7, 31}) {
    for (int j : {0, 7, 8, 31}) {
      cplx g = 0.0;
      for (int q = 0; q < N; ++q) {
        const double y = s.B * q / N;
        g += std::conj(s.eigenfunction(i, y)) * s.eigenfunction(j, y);
      }
      g *= s.B / N;
      CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) < 1e-10);
    }
  }
  for (int n = 1; n <= 60; ++n) CHECK(s.eigenvalues[n] >= s.eigenvalues[n - 1]);
}

TEST_CASE("output is deterministic") {
  const auto m = bump();
  const auto a = solve_angular(m, 1.0, 30), b = solve_angular(m, 1.0, 30);
  for (int n = 0; n <= 30; ++n) {
    CHECK(a.eigenvalues[n] == b.eigenvalues[n]);
    CHECK((a.coefficients[n] - b.coefficients[n]).norm() == 0.0);
  }
}

TEST_CASE("constant-shift covariance") {
  const auto m = bump();
  const double c = 2.5, lambda = 1.0, kappa = lambda * lambda + 0.25;
  const auto s1 = solve_angular(m, lambda, 50);
  const auto s2 = solve_angular(m.b_shifted(c), lambda, 50);
  for (int n = 0; n <= 50; ++n) {
    CHECK(std::abs(s2.eigenvalues[n] - s1.eigenvalues[n] - kappa * c) < 1e-9 * std::max(1.0, s2.eigenvalues[n]));
  }
  const auto c1 = clusters(s1), c2 = clusters(s2);
  REQUIRE(c1 == c2);
  for (const auto& [f, l] : c1) CHECK(subspace_angle(s1, f, l, s2, f, l) < 1e-8);
}

TEST_CASE("momenta and branch rule") {
  CHECK(momentum(0, 4.0).mu == cplx(2.0, 0.0));
  const auto neg = momentum(0, -2.25);
  CHECK(std::abs(neg.mu - cplx(0.0, 1.5)) < 1e-15);
  CHECK(momentum(0, 0.0).on_branch_cut);
  CHECK(momentum(0, 0.0).mu == 0.0);
  const auto s = solve_angular(make({{"b_shift", -1.0}}), 1.0, 10);
  for (const auto& ch : momenta(s)) {
    CHECK(std::abs(ch.mu * ch.mu - ch.mu_sq) < 1e-13 * std::max(1.0, std::abs(ch.mu_sq)));
    CHECK(ch.mu.real() >= 0.0);
  }
  CHECK(momenta(s)[0].mu.imag() > 0.0);
}

TEST_CASE("Weyl law") {
  const auto f = weyl_check(solve_angular(make({}), 1.0, 200));
  CHECK(f.limit == doctest::Approx(0.25));
  for (int k = 1; k <= 100; ++k) CHECK(f.ratio[2 * k - 1] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(f.passed);
  const auto c = weyl_check(solve_angular(make({{"beta_c", 1.0}}), 1.0, 200));
  CHECK(c.passed);
  CHECK(c.final_deviation < 0.02);
  const auto b = weyl_check(solve_angular(bump(), 1.0, 200));
  CHECK(b.passed);
  const auto one = weyl_check(solve_angular(make({}, 1.0), 1.0, 120));
  CHECK(one.limit == doctest::Approx(pi * pi));
}

TEST_CASE("Muntz partial sums diverge logarithmically") {
  const auto f = muntz_partial_sums(solve_angular(make({}), 1.0, 100));
  double h = 0.0;
  for (int k = 1; k <= 50; ++k) h += 1.0 / k;
  CHECK(f.partial_sums[100] == doctest::Approx(2 * h).epsilon(1e-13));
  const auto c = muntz_partial_sums(solve_angular(make({{"beta_c", 1.0}}), 1.0, 200));
  CHECK(c.slope >= 0.9 * c.predicted_slope);
  CHECK(c.slope <= 1.1 * c.predicted_slope);
  for (size_t n = 2; n < c.partial_sums.size(); ++n) CHECK(c.partial_sums[n] > c.partial_sums[n - 1]);
}

TEST_CASE("argument checks") {
  const auto m = bump();
  CHECK_THROWS_AS(solve_angular(m, 0.0, 10), Error);
  try {
    solve_angular(m, 1.0, 40, 100);
    FAIL("expected domain error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::domain_error);
  }
  const auto rough = make({{"beta", 6.0}, {"b_shift", -10.0}, {"b_period", 2 * pi / 40}});
  try {
    solve_angular(rough, 1.0, 10, 44);
    FAIL("expected ResolutionInsufficient");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::resolution_insufficient);
  }
}
