#include "ahls/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include <boost/multiprecision/cpp_complex.hpp>

namespace ahls::specfun {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I1{0.0, 1.0};

// B_{2k} / (2k (2k-1)) for k = 1..12
constexpr std::array<double, 12> stirling_coef = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
    77683.0 / 5796.0,
    -236364091.0 / 1506960.0,
};

cplx log_gamma_stirling(cplx w) {
  // w has Re w >= 15
  cplx r = (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * pi);
  const cplx w2 = 1.0 / (w * w);
  cplx p = 1.0 / w;
  for (double c : stirling_coef) {
    const cplx term = c * p;
    r += term;
    if (std::abs(term) < 1e-18 * std::abs(r)) break;
    p *= w2;
  }
  return r;
}

void check_pole(cplx z) {
  const double n = std::round(z.real());
  if (n <= 0.0 && std::abs(z - cplx(n, 0.0)) < 1e-12) {
    throw Error(Errc::pole_of_gamma, "gamma evaluated at non-positive integer " + std::to_string(n));
  }
}

struct SeriesSums {
  cplx s;
  cplx ds;  // sum of t_k (nu + 2k)
  double abs_s;
  double abs_ds;
};

SeriesSums series_double(cplx nu, cplx z) {
  const cplx w = 0.25 * z * z;
  cplx t = 1.0;
  SeriesSums r{1.0, nu, 1.0, std::abs(nu)};
  const double peak = 0.5 * std::abs(z);
  for (int k = 0; k < 500; ++k) {
    t *= w / ((k + 1.0) * (k + 1.0 + nu));
    const cplx dt = t * (nu + 2.0 * (k + 1));
    r.s += t;
    r.ds += dt;
    r.abs_s += std::abs(t);
    r.abs_ds += std::abs(dt);
    if (k > peak && std::abs(t) <= 1e-18 * r.abs_s && std::abs(dt) <= 1e-18 * r.abs_ds) break;
  }
  return r;
}

using mp_cplx = boost::multiprecision::cpp_complex_50;

SeriesSums series_extended(cplx nu, cplx z) {
  const mp_cplx mnu(nu.real(), nu.imag());
  const mp_cplx mz(z.real(), z.imag());
  const mp_cplx w = mz * mz / 4;
  mp_cplx t(1);
  mp_cplx s(1);
  mp_cplx ds = mnu;
  const double peak = 0.5 * std::abs(z);
  for (int k = 0; k < 800; ++k) {
    t *= w / (mp_cplx(k + 1) * (mp_cplx(k + 1) + mnu));
    s += t;
    ds += t * (mnu + mp_cplx(2 * (k + 1)));
    if (k > peak && abs(t) < 1e-40 * abs(s)) break;
  }
  SeriesSums r;
  r.s = cplx(static_cast<double>(s.real()), static_cast<double>(s.imag()));
  r.ds = cplx(static_cast<double>(ds.real()), static_cast<double>(ds.imag()));
  r.abs_s = std::abs(r.s);
  r.abs_ds = std::abs(r.ds);
  return r;
}

void check_argument(cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(Errc::domain_error, "non-finite Bessel argument");
  }
  if (z.real() < -1e-14 * std::abs(z)) {
    throw Error(Errc::domain_error, "Bessel argument outside the closed right half-plane");
  }
}

}  // namespace

cplx log_gamma(cplx z) {
  check_pole(z);
  if (z.real() < 0.5) {
    // reflection: lnΓ(z) = ln π - ln sin(πz) - lnΓ(1-z)
    return std::log(pi) - std::log(std::sin(pi * z)) - log_gamma(1.0 - z);
  }
  cplx shift_log = 0.0;
  cplx w = z;
  while (w.real() < 15.0) {
    shift_log += std::log(w);
    w += 1.0;
  }
  return log_gamma_stirling(w) - shift_log;
}

cplx complex_gamma(cplx z) {
  check_pole(z);
  if (z.real() < 0.5) {
    return pi / (std::sin(pi * z) * complex_gamma(1.0 - z));
  }
  cplx prod = 1.0;
  cplx w = z;
  while (w.real() < 15.0) {
    prod *= w;
    w += 1.0;
  }
  return std::exp(log_gamma_stirling(w)) / prod;
}

BesselOrder::BesselOrder(double lambda) : lambda_(std::abs(lambda)), flipped_(lambda < 0.0) {
  if (!std::isfinite(lambda) || lambda == 0.0) {
    throw Error(Errc::domain_error, "Bessel order iλ requires finite nonzero λ");
  }
}

BesselOrder BesselOrder::degenerate() { return BesselOrder(0.0, false); }

cplx BesselOrder::nu(Branch b) const {
  const bool plus = (b == Branch::plus) != flipped_;
  return plus ? cplx(0.0, lambda_) : cplx(0.0, -lambda_);
}

BesselValue bessel_i_series(const BesselOrder& order, Branch branch, cplx z, bool scaled) {
  check_argument(z);
  const cplx nu = order.nu(branch);
  if (z == 0.0) {
    if (order.is_degenerate()) return {1.0, 0.0};
    throw Error(Errc::domain_error, "I_{iλ}(0) is undefined for λ ≠ 0");
  }
  SeriesSums r = series_double(nu, z);
  if (r.abs_s > 1e3 * std::abs(r.s) || r.abs_ds > 1e3 * std::abs(r.ds)) {
    r = series_extended(nu, z);
  }
  cplx logpre = nu * std::log(0.5 * z) - log_gamma(1.0 + nu);
  if (scaled) logpre -= z;
  const cplx pre = std::exp(logpre);
  return {pre * r.s, pre * r.ds / z};
}

BesselValue bessel_i_asymptotic(const BesselOrder& order, Branch branch, cplx z, bool scaled,
                                double precision) {
  check_argument(z);
  const cplx nu = order.nu(branch);
  const cplx four_nu2 = 4.0 * nu * nu;
  const cplx zi = 1.0 / z;
  // S1 = Σ (-1)^k a_k z^{-k}, S2 = Σ a_k z^{-k}, plus derivative companions
  cplx s1 = 1.0, s2 = 1.0, d1 = 1.0 - 0.5 * zi, d2 = -1.0 - 0.5 * zi;
  cplx a = 1.0;
  cplx zk = 1.0;
  double last = 1.0;
  bool converged = false;
  for (int k = 1; k < 200; ++k) {
    a *= (four_nu2 - double((2 * k - 1) * (2 * k - 1))) / (8.0 * k);
    zk *= zi;
    const cplx term = a * zk;
    const double mag = std::abs(term);
    if (mag > last && k > 2) break;  // past the smallest term
    last = mag;
    const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
    s1 += sgn * term;
    s2 += term;
    d1 += sgn * term * (1.0 - (k + 0.5) * zi);
    d2 += term * (-1.0 - (k + 0.5) * zi);
    if (mag < 1e-17) {
      converged = true;
      break;
    }
  }
  if (!converged && last > precision) {
    throw Error(Errc::non_convergence, "large-argument expansion for I did not reach the requested precision");
  }
  cplx stokes;
  if (z.imag() > 0.0) {
    stokes = I1 * std::exp(I1 * nu * pi);
  } else if (z.imag() < 0.0) {
    stokes = -I1 * std::exp(-I1 * nu * pi);
  } else {
    stokes = -std::sin(nu * pi);
  }
  const cplx root = std::sqrt(2.0 * pi * z);
  // e^{-z} I = S1/root + stokes e^{-2z} S2/root
  const cplx e2 = std::exp(-2.0 * z);
  cplx val = (s1 + stokes * e2 * s2) / root;
  cplx der = (d1 + stokes * e2 * d2) / root;
  if (!scaled) {
    const cplx ez = std::exp(z);
    val *= ez;
    der *= ez;
  }
  return {val, der};
}

BesselValue bessel_k_asymptotic(const BesselOrder& order, cplx z, bool scaled, double precision) {
  check_argument(z);
  if (order.is_degenerate()) throw Error(Errc::domain_error, "K requires λ ≠ 0");
  const cplx nu = order.nu(Branch::plus);
  const cplx four_nu2 = 4.0 * nu * nu;
  const cplx zi = 1.0 / z;
  cplx s = 1.0, d = -1.0 - 0.5 * zi;
  cplx a = 1.0, zk = 1.0;
  double last = 1.0;
  bool converged = false;
  for (int k = 1; k < 200; ++k) {
    a *= (four_nu2 - double((2 * k - 1) * (2 * k - 1))) / (8.0 * k);
    zk *= zi;
    const cplx term = a * zk;
    const double mag = std::abs(term);
    if (mag > last && k > 2) break;
    last = mag;
    s += term;
    d += term * (-1.0 - (k + 0.5) * zi);
    if (mag < 1e-17) {
      converged = true;
      break;
    }
  }
  if (!converged && last > precision) {
    throw Error(Errc::non_convergence, "large-argument expansion for K did not reach the requested precision");
  }
  const cplx pre = std::sqrt(pi / (2.0 * z));
  cplx val = pre * s;
  cplx der = pre * d;
  if (!scaled) {
    const cplx e = std::exp(-z);
    val *= e;
    der *= e;
  }
  return {val, der};
}

BesselValue bessel_k_integral(const BesselOrder& order, cplx z, bool scaled) {
  check_argument(z);
  if (z == 0.0) throw Error(Errc::domain_error, "K_{iλ}(0) is undefined");
  if (order.is_degenerate()) throw Error(Errc::domain_error, "K requires λ ≠ 0");
  const cplx nu = order.nu(Branch::plus);
  const double theta = std::arg(z);
  // K_ν(z) = ½ ∫ exp(-z cosh t - ν t) dt along t = s - iθ tanh s, on which
  // Re(z cosh t) stays non-negative.
  auto f = [&](double s, cplx& v, cplx& dv) {
    const double th = std::tanh(s);
    const cplx t(s, -theta * th);
    const cplx dt(1.0, -theta * (1.0 - th * th));
    const cplx ct = std::cosh(t);
    const cplx e = std::exp(-z * (ct - 1.0) - nu * t) * dt;
    v = e;
    dv = -ct * e;
  };
  auto extent = [&](double dir) {
    double fmax = 0.0;
    double s = 0.0;
    for (int i = 0; i < 400; ++i) {
      cplx v, dv;
      f(dir * s, v, dv);
      const double m = std::max(std::abs(v), std::abs(dv));
      fmax = std::max(fmax, m);
      if (s > 1.0 && m < 1e-19 * fmax) return s;
      s += 0.25;
    }
    throw Error(Errc::non_convergence, "K integral tail did not decay");
  };
  const double s_hi = extent(1.0);
  const double s_lo = extent(-1.0);
  double h = 0.25;
  cplx sum = 0.0, dsum = 0.0;
  double l1 = 0.0, dl1 = 0.0;  // near a zero of K the relative test is hopeless
  for (double s = -s_lo; s <= s_hi + 1e-12; s += h) {
    cplx v, dv;
    f(s, v, dv);
    sum += v;
    dsum += dv;
    l1 += std::abs(v);
    dl1 += std::abs(dv);
  }
  l1 *= 0.5 * h;
  dl1 *= 0.5 * h;
  cplx est = 0.5 * h * sum, dest = 0.5 * h * dsum;
  for (int level = 0; level < 14; ++level) {
    cplx add = 0.0, dadd = 0.0;
    for (double s = -s_lo + 0.5 * h; s < s_hi; s += h) {
      cplx v, dv;
      f(s, v, dv);
      add += v;
      dadd += dv;
    }
    sum += add;
    dsum += dadd;
    h *= 0.5;
    const cplx next = 0.5 * h * sum, dnext = 0.5 * h * dsum;
    const bool done = level >= 1 && std::abs(next - est) <= 1e-15 * std::max(std::abs(next), l1) &&
                      std::abs(dnext - dest) <= 1e-15 * std::max(std::abs(dnext), dl1);
    est = next;
    dest = dnext;
    if (done) {
      if (!scaled) {
        const cplx e = std::exp(-z);
        est *= e;
        dest *= e;
      }
      return {est, dest};
    }
  }
  throw Error(Errc::non_convergence, "K integral trapezoid refinement did not converge");
}

double k_cancellation_digits(const BesselOrder& order, cplx z) {
  const cplx ip = bessel_i_series(order, Branch::plus, z, true).value;
  const cplx im = bessel_i_series(order, Branch::minus, z, true).value;
  const double big = std::max(std::abs(ip), std::abs(im));
  const double diff = std::abs(im - ip);
  if (diff == 0.0) return 17.0;
  return std::log10(big / diff);
}

BesselValue bessel_i_eval(const BesselOrder& order, Branch branch, cplx z, bool scaled,
                          double precision) {
  if (!(precision > 0.0 && precision <= 1e-6)) {
    throw Error(Errc::domain_error, "precision must lie in (0, 1e-6]");
  }
  if (std::abs(z) <= z_switch) return bessel_i_series(order, branch, z, scaled);
  return bessel_i_asymptotic(order, branch, z, scaled, precision);
}

BesselValue bessel_k_eval(const BesselOrder& order, cplx z, bool scaled, double precision) {
  if (!(precision > 0.0 && precision <= 1e-6)) {
    throw Error(Errc::domain_error, "precision must lie in (0, 1e-6]");
  }
  check_argument(z);
  if (order.is_degenerate()) throw Error(Errc::domain_error, "K requires λ ≠ 0");
  if (z == 0.0) throw Error(Errc::domain_error, "K_{iλ}(0) is undefined");
  if (std::abs(z) > z_switch) return bessel_k_asymptotic(order, z, scaled, precision);
  const BesselValue ip = bessel_i_series(order, Branch::plus, z, false);
  const BesselValue im = bessel_i_series(order, Branch::minus, z, false);
  const double big = std::max(std::abs(ip.value), std::abs(im.value));
  const double diff = std::abs(im.value - ip.value);
  if (diff == 0.0 || std::log10(big / diff) > k_cancellation_limit) {
    return bessel_k_integral(order, z, scaled);
  }
  const cplx nu = order.nu(Branch::plus);
  cplx c = 0.5 * pi / std::sin(nu * pi);
  if (scaled) c *= std::exp(z);
  return {c * (im.value - ip.value), c * (im.derivative - ip.derivative)};
}

cplx bessel_i(const BesselOrder& order, Branch branch, cplx z, double precision) {
  return bessel_i_eval(order, branch, z, false, precision).value;
}

cplx bessel_k(const BesselOrder& order, cplx z, double precision) {
  return bessel_k_eval(order, z, false, precision).value;
}

cplx bessel_wronskian_check(const BesselOrder& order, double x, cplx mu) {
  const cplx z = mu * x;
  const BesselValue i = bessel_i_eval(order, Branch::plus, z, true);
  const BesselValue k = bessel_k_eval(order, z, true);
  return x * mu * (i.value * k.derivative - i.derivative * k.value);
}

}  // namespace ahls::specfun
