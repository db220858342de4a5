#pragma once

// Arbitrary-precision reference values for gamma and imaginary-order Bessel
// functions. Deliberately naive: fixed-length series, defining formula for K.

#include <complex>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

namespace oracle {

using mpf = boost::multiprecision::cpp_bin_float_100;
using mpc = boost::multiprecision::cpp_complex_100;

inline mpf mp_pi() { return boost::math::constants::pi<mpf>(); }

inline std::complex<double> to_double(const mpc& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

inline mpc from_double(std::complex<double> z) { return mpc(mpf(z.real()), mpf(z.imag())); }

inline mpc log_gamma(mpc z) {
  if (z.real() < mpf(0.5)) {
    return log(mpc(mp_pi())) - log(sin(mpc(mp_pi()) * z)) - log_gamma(mpc(1) - z);
  }
  mpc shift(0);
  while (z.real() < mpf(60)) {
    shift += log(z);
    z += mpc(1);
  }
  mpc r = (z - mpc(mpf(0.5))) * log(z) - z + log(mpc(2 * mp_pi())) / mpc(2);
  const mpc z2 = mpc(1) / (z * z);
  mpc p = mpc(1) / z;
  for (int k = 1; k <= 40; ++k) {
    const mpf b = boost::math::bernoulli_b2n<mpf>(k);
    r += mpc(b / mpf(2 * k * (2 * k - 1))) * p;
    p *= z2;
  }
  return r - shift;
}

inline mpc gamma(const mpc& z) { return exp(log_gamma(z)); }

// I_ν(z) and I'_ν(z) by the defining power series truncated at 200 terms.
inline void bessel_i(const mpc& nu, const mpc& z, mpc& value, mpc& deriv) {
  const mpc half = z / mpc(2);
  const mpc w = half * half;
  mpc t = exp(nu * log(half) - log_gamma(nu + mpc(1)));
  value = mpc(0);
  deriv = mpc(0);
  for (int k = 0; k < 200; ++k) {
    value += t;
    deriv += t * (nu + mpc(2 * k)) / z;
    t *= w / (mpc(k + 1) * (mpc(k + 1) + nu));
  }
}

inline mpc bessel_i(const mpc& nu, const mpc& z) {
  mpc v, d;
  bessel_i(nu, z, v, d);
  return v;
}

// K_{iλ}(z) from (π/2)(I_{-ν} - I_ν)/sin(νπ); 100 digits absorb the cancellation
// for |z| <= 40.
inline void bessel_k(const mpf& lambda, const mpc& z, mpc& value, mpc& deriv) {
  const mpc nu(mpf(0), lambda);
  mpc ip, dip, im, dim;
  bessel_i(nu, z, ip, dip);
  bessel_i(-nu, z, im, dim);
  const mpc c = mpc(mp_pi() / 2) / sin(nu * mpc(mp_pi()));
  value = c * (im - ip);
  deriv = c * (dim - dip);
}

inline mpc bessel_k(const mpf& lambda, const mpc& z) {
  mpc v, d;
  bessel_k(lambda, z, v, d);
  return v;
}

}  // namespace oracle
