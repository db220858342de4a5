#pragma once

// Frozen high-precision reference values (generated by tests/oracle/gen_reference).

#include <span>

#include "ahls/error.hpp"

namespace ahls::reference {

struct BesselSample {
  double lambda;
  cplx z;
  cplx i_plus;   // I_{iλ}(z)
  cplx i_minus;  // I_{-iλ}(z)
  cplx k;        // K_{iλ}(z)
};

struct GammaSample {
  cplx z;
  cplx value;
};

std::span<const BesselSample> bessel_samples();
std::span<const GammaSample> gamma_samples();

}  // namespace ahls::reference
