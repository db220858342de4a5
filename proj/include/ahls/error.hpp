#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ahls {

using cplx = std::complex<double>;

enum class Errc {
  pole_of_gamma,
  non_convergence,
  domain_error,
  invalid_family,
  positivity_violation,
  validation_failed,
  zero_energy,
  resolution_insufficient,
  zero_momentum,
  no_convergence,
  quadrature_failure,
  stiffness_failure,
  at_regge_pole,
  sector_error,
  pole_missed,
  inconsistent_shift,
  incompatible_b,
  config_error,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace ahls
