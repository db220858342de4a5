#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ahls/reference.hpp"
#include "ahls/specfun.hpp"
#include "mp_oracle.hpp"

using namespace ahls;
using namespace ahls::specfun;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("gamma: closed-form values") {
  CHECK(std::abs(complex_gamma(1.0) - 1.0) < 1e-14);
  CHECK(rel(complex_gamma(0.5), std::sqrt(std::numbers::pi)) < 1e-14);
  CHECK(rel(complex_gamma(6.0), 120.0) < 1e-14);
  CHECK(rel(complex_gamma(-0.5), -2.0 * std::sqrt(std::numbers::pi)) < 1e-14);
}

TEST_CASE("gamma: frozen reference values") {
  for (const auto& s : reference::gamma_samples()) {
    CAPTURE(s.z);
    CHECK(rel(complex_gamma(s.z), s.value) < 1e-13);
  }
}

TEST_CASE("gamma: poles raise") {
  for (double n : {0.0, -1.0, -3.0, -17.0}) {
    try {
      complex_gamma(cplx(n, 0.0));
      FAIL("expected PoleOfGamma");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::pole_of_gamma);
    }
  }
  CHECK_NOTHROW(complex_gamma(cplx(-3.0, 1e-6)));
}

TEST_CASE("gamma: random points against the arbitrary-precision oracle") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  int checked = 0;
  while (checked < 40) {
    const cplx z(u(rng), u(rng));
    if (std::abs(z) > 50.0) continue;
    const cplx ref = oracle::to_double(oracle::gamma(oracle::from_double(z)));
    CAPTURE(z);
    CHECK(rel(complex_gamma(z), ref) < 1e-13);
    ++checked;
  }
}

TEST_CASE("frozen Bessel table matches the live oracle") {
  for (const auto& s : reference::bessel_samples()) {
    const oracle::mpc z = oracle::from_double(s.z);
    const oracle::mpc nu(oracle::mpf(0), oracle::mpf(s.lambda));
    CHECK(rel(oracle::to_double(oracle::bessel_i(nu, z)), s.i_plus) < 1e-15);
    CHECK(rel(oracle::to_double(oracle::bessel_k(oracle::mpf(s.lambda), z)), s.k) < 1e-15);
  }
}

TEST_CASE("Bessel values agree with the reference table") {
  for (const auto& s : reference::bessel_samples()) {
    const BesselOrder ord(s.lambda);
    CAPTURE(s.lambda);
    CAPTURE(s.z);
    CHECK(rel(bessel_i(ord, Branch::plus, s.z), s.i_plus) < 1e-12);
    CHECK(rel(bessel_i(ord, Branch::minus, s.z), s.i_minus) < 1e-12);
    CHECK(rel(bessel_k(ord, s.z), s.k) < 1e-12);
  }
}

TEST_CASE("I: small-argument normalization") {
  for (double lambda : {0.5, 1.0, 2.0}) {
    const BesselOrder ord(lambda);
    const cplx z = 1e-6;
    const cplx nu(0.0, lambda);
    const cplx r = bessel_i(ord, Branch::plus, z) * complex_gamma(1.0 + nu) * std::pow(0.5 * z, -nu);
    CHECK(std::abs(r - 1.0) < 1e-11);
  }
}

TEST_CASE("I: degenerate order gives I0") {
  const auto ord = BesselOrder::degenerate();
  CHECK(std::abs(bessel_i(ord, Branch::plus, 1.0) - 1.2660658777520082) < 1e-14);
  CHECK_THROWS_AS(bessel_k(ord, 1.0), Error);
}

TEST_CASE("K: real for real arguments") {
  for (double lambda : {0.5, 1.0, 2.5}) {
    for (double x : {0.5, 2.0, 10.0}) {
      const cplx k = bessel_k(BesselOrder(lambda), x);
      CHECK(std::abs(k.imag()) < 1e-12 * std::max(1.0, std::abs(k)));
    }
  }
}

TEST_CASE("K: defining combination of I") {
  const BesselOrder ord(1.0);
  for (cplx z : {cplx(1.0, 1.0), cplx(0.5, 0.0), cplx(0.3, 1.2), cplx(2.0, -0.5)}) {
    const cplx nu(0.0, 1.0);
    const cplx def = 0.5 * std::numbers::pi *
                     (bessel_i(ord, Branch::minus, z) - bessel_i(ord, Branch::plus, z)) /
                     std::sin(nu * std::numbers::pi);
    CHECK(rel(bessel_k(ord, z), def) < 1e-12);
    // the integral route, independent of the series
    CHECK(rel(bessel_k_integral(ord, z, false).value, def) < 1e-12);
  }
}

TEST_CASE("Wronskian is -1") {
  CHECK(std::abs(bessel_wronskian_check(BesselOrder(1.0), 0.3) + 1.0) < 1e-12);
  CHECK(std::abs(bessel_wronskian_check(BesselOrder(2.0), 1.7) + 1.0) < 1e-12);
  CHECK(std::abs(bessel_wronskian_check(BesselOrder(0.5), 1e-3) + 1.0) < 1e-12);
  for (double lambda : {0.5, 1.0, 3.0}) {
    for (cplx mu : {cplx(1.0, 0.0), cplx(3.0, 4.0), cplx(0.0, 7.0), cplx(45.0, 0.0)}) {
      for (double x : {0.05, 0.5, 0.9}) {
        CHECK(std::abs(bessel_wronskian_check(BesselOrder(lambda), x, mu) + 1.0) < 1e-10);
      }
    }
  }
}

TEST_CASE("conjugation symmetry") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> re(0.0, 45.0), im(-45.0, 45.0), lam(0.2, 3.0);
  for (int i = 0; i < 60; ++i) {
    const cplx z(re(rng), im(rng));
    const BesselOrder ord(lam(rng));
    const cplx a = bessel_i(ord, Branch::minus, std::conj(z));
    const cplx b = std::conj(bessel_i(ord, Branch::plus, z));
    CAPTURE(z);
    CHECK(rel(a, b) < 1e-11);
  }
}

TEST_CASE("negative order folds onto the other branch") {
  const BesselOrder neg(-1.3), pos(1.3);
  const cplx z(2.0, 1.0);
  CHECK(bessel_i(neg, Branch::plus, z) == bessel_i(pos, Branch::minus, z));
  CHECK(rel(bessel_k(neg, z), bessel_k(pos, z)) < 1e-13);
  CHECK_THROWS_AS(BesselOrder(0.0), Error);
}

TEST_CASE("series and large-argument expansions overlap") {
  for (double lambda : {0.5, 1.0, 2.0, 3.0}) {
    const BesselOrder ord(lambda);
    for (double r : {0.8 * z_switch, 1.2 * z_switch}) {
      for (double ph : {0.0, 0.4, 1.0, 1.5707963267948966, -0.9}) {
        const cplx z = std::polar(r, ph);
        const auto s = bessel_i_series(ord, Branch::plus, z, true);
        const auto a = bessel_i_asymptotic(ord, Branch::plus, z, true);
        CAPTURE(z);
        CHECK(rel(a.value, s.value) < 1e-10);
        CHECK(rel(a.derivative, s.derivative) < 1e-10);
        const auto ki = bessel_k_integral(ord, z, true);
        const auto ka = bessel_k_asymptotic(ord, z, true);
        CHECK(rel(ka.value, ki.value) < 1e-10);
        CHECK(rel(ka.derivative, ki.derivative) < 1e-10);
      }
    }
  }
}

TEST_CASE("growth envelope of I on the real axis") {
  for (double lambda : {0.5, 1.0, 2.0}) {
    const BesselOrder ord(lambda);
    auto ratio = [&](double x) {
      return std::abs(bessel_i_eval(ord, Branch::plus, x, true).value) * std::sqrt(1.0 + x);
    };
    double c = 0.0;
    for (int i = 0; i <= 40; ++i) c = std::max(c, ratio(1e-3 * std::pow(4e4, i / 40.0)));
    for (int i = 0; i <= 400; ++i) {
      const double x = 1e-3 * std::pow(4e4, i / 400.0);
      CHECK(ratio(x) <= 1.01 * c);
    }
  }
}

TEST_CASE("argument and precision checks") {
  const BesselOrder ord(1.0);
  CHECK_THROWS_AS(bessel_k(ord, 0.0), Error);
  CHECK_THROWS_AS(bessel_i(ord, Branch::plus, cplx(-1.0, 0.0)), Error);
  CHECK_THROWS_AS(bessel_i(ord, Branch::plus, 1.0, 1e-3), Error);
}
