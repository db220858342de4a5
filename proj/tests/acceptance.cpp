// One line per acceptance criterion; exit status 1 if any fails.

#include <cstdio>
#include <iostream>

#include "ahls/config.hpp"
#include "ahls/verify.hpp"
#include "mp_oracle.hpp"

using namespace ahls;

int main() {
  verify::VerifyOptions opt;
  const std::string dir = std::string(AHLS_SOURCE_DIR) + "/configs/";
  for (const char* name : {"hyperbolic_bump", "pure_hyperbolic", "tabulated"}) {
    opt.families.push_back({name, load_config(dir + name + ".toml").metric});
  }
  opt.lambda = 1.0;
  // 100-digit series, independent of the library's evaluators
  opt.oracle = [](double lambda, cplx z) {
    const oracle::mpc zz = oracle::from_double(z);
    const oracle::mpf l(lambda);
    return std::array<cplx, 3>{oracle::to_double(oracle::bessel_i(oracle::mpc(oracle::mpf(0), l), zz)),
                               oracle::to_double(oracle::bessel_i(oracle::mpc(oracle::mpf(0), -l), zz)),
                               oracle::to_double(oracle::bessel_k(l, zz))};
  };
  int failed = 0;
  verify::run_all(opt, [&](const verify::Criterion& c) {
    std::cout << verify::format_line(c) << std::endl;
    failed += !c.passed;
  });
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all 10 criteria passed")) << "\n";
  return failed ? 1 : 0;
}
