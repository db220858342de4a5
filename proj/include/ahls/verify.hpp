#pragma once

// The acceptance suite: ten criteria, each a pass/fail with the measured
// value, its threshold and the wall time.

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "ahls/error.hpp"
#include "ahls/metric.hpp"

namespace ahls::verify {

struct Criterion {
  int id = 0;
  std::string name;
  bool passed = false;
  double measured = 0.0;   // worst value of the headline quantity
  double threshold = 0.0;
  std::string detail;
  double seconds = 0.0;
  double time_limit = 0.0;  // 0: none
};

struct Family {
  std::string name;
  metric::MetricConfig config;
};

// I_{iλ}(z), I_{-iλ}(z), K_{iλ}(z) from an independent high-precision source.
using BesselOracle = std::function<std::array<cplx, 3>(double lambda, cplx z)>;

struct VerifyOptions {
  // families[0] drives the single-family criteria (4 to 8 and 10)
  std::vector<Family> families;
  double lambda = 1.0;
  BesselOracle oracle;  // empty: the frozen reference table
  unsigned seed = 20261016;
};

// Hyperbolic bump (A = 1, B = 2π) and the pure hyperbolic model.
std::vector<Family> default_families();

Criterion run_criterion(int id, const VerifyOptions& opt);
std::vector<Criterion> run_all(const VerifyOptions& opt, const std::function<void(const Criterion&)>& on_done = {});

// "[PASS] 3 radial dual path ... (1.2 s)"
std::string format_line(const Criterion& c);

}  // namespace ahls::verify
