#pragma once

// Gamma function and modified Bessel functions I_{±iλ}, K_{iλ} of complex
// argument in the closed right half-plane.

#include "ahls/error.hpp"

namespace ahls::specfun {

inline constexpr double z_switch = 30.0;
inline constexpr double default_precision = 1e-13;

cplx complex_gamma(cplx z);
cplx log_gamma(cplx z);

enum class Branch { plus, minus };  // order +iλ or -iλ

class BesselOrder {
 public:
  // Negative lambda is folded to |lambda| with the branch flipped, using
  // I_{-iλ}(z) for I_{i(-λ)}(z).
  explicit BesselOrder(double lambda);
  // ν = 0, for checks against the classical I_0. K is undefined here.
  static BesselOrder degenerate();

  double lambda() const { return lambda_; }
  bool flipped() const { return flipped_; }
  bool is_degenerate() const { return lambda_ == 0.0; }
  // Complex order for the requested branch.
  cplx nu(Branch b) const;

 private:
  BesselOrder(double lambda, bool flipped) : lambda_(lambda), flipped_(flipped) {}
  double lambda_;
  bool flipped_;
};

struct BesselValue {
  cplx value;
  cplx derivative;  // d/dz
};

// Scaled variants return e^{-z} I and e^{z} K (and their derivatives scaled the
// same way), which stay representable for large Re z.
BesselValue bessel_i_eval(const BesselOrder& order, Branch branch, cplx z, bool scaled,
                          double precision = default_precision);
BesselValue bessel_k_eval(const BesselOrder& order, cplx z, bool scaled,
                          double precision = default_precision);

cplx bessel_i(const BesselOrder& order, Branch branch, cplx z,
              double precision = default_precision);
cplx bessel_k(const BesselOrder& order, cplx z, double precision = default_precision);

// Path-forced evaluators, exposed for overlap checks.
BesselValue bessel_i_series(const BesselOrder& order, Branch branch, cplx z, bool scaled);
BesselValue bessel_i_asymptotic(const BesselOrder& order, Branch branch, cplx z, bool scaled,
                                double precision = default_precision);
BesselValue bessel_k_asymptotic(const BesselOrder& order, cplx z, bool scaled,
                                double precision = default_precision);
BesselValue bessel_k_integral(const BesselOrder& order, cplx z, bool scaled);

// Number of decimal digits lost to cancellation in I_{-ν} - I_ν at z; the
// direct formula is abandoned above k_cancellation_digits.
double k_cancellation_digits(const BesselOrder& order, cplx z);
inline constexpr double k_cancellation_limit = 3.0;

// W(√x I_{iλ}(μx), √x K_{iλ}(μx)) at x, which is -1 identically.
cplx bessel_wronskian_check(const BesselOrder& order, double x, cplx mu = 1.0);

}  // namespace ahls::specfun
