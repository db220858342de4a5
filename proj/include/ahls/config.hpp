#pragma once

#include <string>

#include "ahls/error.hpp"
#include "ahls/metric.hpp"

namespace ahls {

struct Tolerances {
  double radial = 1e-12;     // ODE step error and Picard truncation
  double compare = 1e-6;     // fingerprint deviations
  double shift = 1e-6;       // spread of recovered angular shifts
};

struct RunConfig {
  metric::MetricConfig metric;
  double lambda = 1.0;
  int n_channels = 30;
  cplx C10 = 1.0;
  cplx C11 = 1.0;
  int angular_modes = 0;  // 0: chosen from n_channels
  int pole_count = 20;
  Tolerances tol;
  std::string out_dir = ".";
  std::string source;  // file the config came from, if any
};

// Throws Error(config_error) naming the offending key.
RunConfig parse_config(const std::string& toml_text, const std::string& origin = "<string>");
RunConfig load_config(const std::string& path);

}  // namespace ahls
