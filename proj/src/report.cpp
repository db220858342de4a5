#include "ahls/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ahls::report {

namespace {

json cj(cplx z) { return json::array({z.real(), z.imag()}); }

json rect(const analysis::Rect& r) { return json::array({r.re_lo, r.re_hi, r.im_lo, r.im_hi}); }

json poles_json(const std::vector<analysis::Pole>& ps) {
  json a = json::array();
  for (const auto& p : ps) {
    a.push_back({{"alpha", cj(p.alpha)}, {"residual", p.residual}, {"winding", p.winding}, {"box", rect(p.box)}});
  }
  return a;
}

}  // namespace

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_scatter_csv(std::ostream& os, const scattering::ScatteringOperator& op) {
  os << scatter_header << '\n';
  for (const auto& c : op.channels()) {
    os << c.channel.n << ',' << num(c.channel.mu_sq) << ',' << num(c.T.real()) << ',' << num(c.T.imag()) << ','
       << num(c.L.real()) << ',' << num(c.L.imag()) << ',' << num(c.R.real()) << ',' << num(c.R.imag()) << ',';
    if (c.real_channel) os << num(c.unitarity_defect());
    os << '\n';
  }
}

void write_angular_csv(std::ostream& os, const angular::AngularSpectrum& s) {
  os << "n,mu_sq,cluster\n";
  for (int n = 0; n < s.size(); ++n) os << n << ',' << num(s.eigenvalues[n]) << ',' << s.cluster[n] << '\n';
}

void write_poles_csv(std::ostream& os, const std::vector<analysis::Pole>& poles) {
  os << "n,alpha_re,alpha_im,residual,winding\n";
  for (size_t n = 0; n < poles.size(); ++n) {
    const auto& p = poles[n];
    os << n << ',' << num(p.alpha.real()) << ',' << num(p.alpha.imag()) << ',' << num(p.residual) << ',' << p.winding
       << '\n';
  }
}

void write_mu_path_csv(std::ostream& os, const std::vector<PathSample>& samples) {
  os << "mu,mu_sq,Delta_re,Delta_im,delta_re,delta_im,M_re,M_im,at_regge_pole\n";
  for (const auto& s : samples) {
    os << num(s.mu) << ',' << num(s.mu * s.mu) << ',' << num(s.f.Delta.real()) << ',' << num(s.f.Delta.imag()) << ','
       << num(s.f.delta_small.real()) << ',' << num(s.f.delta_small.imag()) << ',' << num(s.f.M.real()) << ','
       << num(s.f.M.imag()) << ',' << (s.f.at_regge_pole ? 1 : 0) << '\n';
  }
}

std::vector<double> parse_mu_path(const std::string& spec) {
  const auto bad = [&] { return Error(Errc::config_error, "--mu-path expects a:b:n, got '" + spec + "'"); };
  const auto c1 = spec.find(':');
  const auto c2 = c1 == std::string::npos ? c1 : spec.find(':', c1 + 1);
  if (c2 == std::string::npos) throw bad();
  double a, b;
  long n;
  try {
    size_t used = 0;
    const std::string sa = spec.substr(0, c1), sb = spec.substr(c1 + 1, c2 - c1 - 1), sn = spec.substr(c2 + 1);
    a = std::stod(sa, &used);
    if (used != sa.size()) throw bad();
    b = std::stod(sb, &used);
    if (used != sb.size()) throw bad();
    n = std::stol(sn, &used);
    if (used != sn.size()) throw bad();
  } catch (const std::logic_error&) {
    throw bad();
  }
  if (n < 1 || !std::isfinite(a) || !std::isfinite(b) || a < 0.0 || b < 0.0) throw bad();
  std::vector<double> out;
  for (long i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * double(i) / double(n - 1));
  return out;
}

json to_json(const metric::ValidationReport& r) {
  json bounds = json::array();
  for (const auto& b : r.bounds) {
    bounds.push_back({{"end", b.end},
                      {"alpha", b.alpha},
                      {"n", b.n},
                      {"fitted_c", b.fitted_c},
                      {"worst_ratio", b.worst_ratio},
                      {"stable", b.stable}});
  }
  return {{"passed", r.passed},
          {"max_order", r.max_order},
          {"positivity_ok", r.positivity_ok},
          {"min_a_minus_b", r.min_a_minus_b},
          {"min_at", {r.min_x, r.min_y}},
          {"periodicity_ok", r.periodicity_ok},
          {"periodicity_fail_order", r.periodicity_fail_order},
          {"periodicity_defect", r.periodicity_defect},
          {"bounds_ok", r.bounds_ok},
          {"bounds", bounds}};
}

json to_json(const scattering::ScatteringOperator& op) {
  json chans = json::array();
  for (const auto& c : op.channels()) {
    const auto& k = c.checks;
    chans.push_back({{"n", c.channel.n},
                     {"mu_sq", c.channel.mu_sq},
                     {"mu", cj(c.channel.mu)},
                     {"real_channel", c.real_channel},
                     {"Delta", cj(c.funcs.Delta)},
                     {"delta", cj(c.funcs.delta_small)},
                     {"M", cj(c.funcs.M)},
                     {"T", cj(c.T)},
                     {"L", cj(c.L)},
                     {"R", cj(c.R)},
                     {"match_spread", c.funcs.match_spread},
                     {"checks",
                      {{"t_plus_l", k.t_plus_l},
                       {"t_plus_r", k.t_plus_r},
                       {"cross", k.cross},
                       {"s_unitary", k.s_unitary},
                       {"relation", k.relation},
                       {"delta_relation", k.delta_relation},
                       {"r_conjugate", k.r_conjugate},
                       {"r_modulus", k.r_modulus},
                       {"delta_times_t", k.delta_times_t},
                       {"l_from_m", k.l_from_m},
                       {"cross_check", k.cross_check}}}});
  }
  return {{"lambda", op.lambda()},
          {"C10", cj(op.C10())},
          {"C11", cj(op.C11())},
          {"identity_defect", op.identity_defect()},
          {"channels", chans}};
}

json to_json(const analysis::ReggePoleSet& s) {
  json off = json::array();
  for (size_t i = 0; i < s.off_ladder.size(); ++i) {
    off.push_back({{"box", rect(s.off_ladder[i])}, {"winding", s.off_ladder_winding[i]}});
  }
  return {{"lambda", s.lambda},    {"A", s.A},
          {"p_alpha", s.p_alpha},  {"p_beta", s.p_beta},
          {"swept_height", s.swept_height}, {"predicted", s.predicted},
          {"poles", poles_json(s.poles)},   {"small_zeros", poles_json(s.small_zeros)},
          {"off_ladder", off}};
}

json to_json(const analysis::BoundsReport& r) {
  return {{"imag_grid", r.imag_grid},
          {"imag_delta", r.imag_delta},
          {"imag_delta_small", r.imag_delta_small},
          {"imag_max_delta", r.imag_max_delta},
          {"imag_max_delta_small", r.imag_max_delta_small},
          {"imag_growth", r.imag_growth},
          {"real_grid", r.real_grid},
          {"real_delta", r.real_delta},
          {"real_m", r.real_m},
          {"mu_star", r.mu_star},
          {"last_decrease", r.last_decrease},
          {"monotonicity_violations", r.monotonicity_violations},
          {"tail_violations", r.tail_violations},
          {"lower_margin", r.lower_margin},
          {"m_bound_margin", r.m_bound_margin}};
}

json to_json(const inverse::FingerprintReport& r) {
  json rows = json::array();
  for (const auto& c : r.channels) {
    rows.push_back({{"n", c.n},
                    {"mu_sq", c.mu_sq},
                    {"mu_sq_tilde", c.mu_sq_tilde},
                    {"Delta", cj(c.Delta)},
                    {"Delta_tilde", cj(c.Delta_tilde)},
                    {"M", cj(c.M)},
                    {"M_tilde", cj(c.M_tilde)},
                    {"eigen_deviation", c.eigen_deviation},
                    {"m_deviation", c.m_deviation},
                    {"delta_deviation", c.delta_deviation}});
  }
  json clusters = json::array();
  for (const auto& f : r.clusters) clusters.push_back({{"first", f.first}, {"last", f.last}, {"angle", f.angle}});
  return {{"metrics", {r.name1, r.name2}},
          {"lambda", r.lambda},
          {"tol", r.tol},
          {"verdict", inverse::verdict_name(r.verdict)},
          {"C", r.C},
          {"shift_spread", r.shift_spread},
          {"shift_consistent", r.shift_consistent},
          {"max_eigen_deviation", r.max_eigen_deviation},
          {"max_m_deviation", r.max_m_deviation},
          {"max_delta_deviation", r.max_delta_deviation},
          {"max_angle", r.max_angle},
          {"distinguished_channels", r.distinguished_channels},
          {"off_lattice_deviation", r.off_lattice_deviation},
          {"clusters", clusters},
          {"channels", rows}};
}

json to_json(const std::vector<verify::Criterion>& cs) {
  json a = json::array();
  bool all = true;
  for (const auto& c : cs) {
    all = all && c.passed;
    a.push_back({{"id", c.id},
                 {"name", c.name},
                 {"passed", c.passed},
                 {"measured", c.measured},
                 {"threshold", c.threshold},
                 {"detail", c.detail},
                 {"seconds", c.seconds},
                 {"time_limit", c.time_limit}});
  }
  return {{"passed", all}, {"criteria", a}};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::config_error, path + ": cannot write");
  out << content;
  if (!out) throw Error(Errc::config_error, path + ": write failed");
}

}  // namespace ahls::report
