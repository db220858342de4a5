#pragma once

// CSV and JSON output. CSV numbers use 17 significant digits.

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ahls/analysis.hpp"
#include "ahls/angular.hpp"
#include "ahls/inverse.hpp"
#include "ahls/metric.hpp"
#include "ahls/scattering.hpp"
#include "ahls/verify.hpp"

namespace ahls::report {

using json = nlohmann::ordered_json;

std::string num(double v);

inline constexpr const char* scatter_header = "n,mu_sq,T_re,T_im,L_re,L_im,R_re,R_im,unitarity_defect";

// unitarity_defect is empty on imaginary channels
void write_scatter_csv(std::ostream& os, const scattering::ScatteringOperator& op);
void write_angular_csv(std::ostream& os, const angular::AngularSpectrum& s);
void write_poles_csv(std::ostream& os, const std::vector<analysis::Pole>& poles);

struct PathSample {
  double mu;
  radial::ChannelFunctions f;
};
// mu,mu_sq,Delta_re,Delta_im,delta_re,delta_im,M_re,M_im,at_regge_pole
void write_mu_path_csv(std::ostream& os, const std::vector<PathSample>& samples);

// "a:b:n": n equally spaced points from a to b inclusive. Throws config_error.
std::vector<double> parse_mu_path(const std::string& spec);

json to_json(const metric::ValidationReport& r);
json to_json(const scattering::ScatteringOperator& op);
json to_json(const analysis::ReggePoleSet& s);
json to_json(const analysis::BoundsReport& r);
json to_json(const inverse::FingerprintReport& r);
json to_json(const std::vector<verify::Criterion>& cs);

void write_file(const std::string& path, const std::string& content);

}  // namespace ahls::report
