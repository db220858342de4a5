#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ahls/analysis.hpp"
#include "ahls/angular.hpp"
#include "ahls/config.hpp"
#include "ahls/inverse.hpp"
#include "ahls/parallel.hpp"
#include "ahls/report.hpp"
#include "ahls/scattering.hpp"
#include "ahls/verify.hpp"

namespace fs = std::filesystem;
using namespace ahls;

namespace {

struct Globals {
  std::string config;
  std::optional<std::string> out;
  std::optional<int> channels;
  std::optional<double> lambda;
  std::optional<int> threads;
  std::optional<double> tol;
};

// exit codes
constexpr int ok = 0, failed = 1, bad_input = 2;

RunConfig load(const Globals& g, const std::string& path) {
  if (path.empty()) throw Error(Errc::config_error, "--config is required for this command");
  RunConfig rc = load_config(path);
  if (g.out) rc.out_dir = *g.out;
  if (g.channels) {
    if (*g.channels < 1) throw Error(Errc::config_error, "--channels must be at least 1");
    rc.n_channels = *g.channels;
  }
  if (g.lambda) {
    if (*g.lambda == 0.0) throw Error(Errc::config_error, "--lambda must be nonzero");
    rc.lambda = *g.lambda;
  }
  return rc;
}

std::string out_path(const RunConfig& rc, const std::string& name) {
  fs::create_directories(rc.out_dir);
  return (fs::path(rc.out_dir) / name).string();
}

void save_csv(const RunConfig& rc, const std::string& name, const std::ostringstream& os) {
  const auto p = out_path(rc, name);
  report::write_file(p, os.str());
  std::cout << "wrote " << p << "\n";
}

void save_json(const RunConfig& rc, const std::string& name, const report::json& j) {
  const auto p = out_path(rc, name);
  report::write_file(p, j.dump(2) + "\n");
  std::cout << "wrote " << p << "\n";
}

int cmd_validate(const Globals& g) {
  const auto rc = load(g, g.config);
  const auto m = metric::build_metric(rc.metric, {.validate = false});
  const auto rep = metric::validate_ahls(m);
  save_json(rc, "validation.json", report::to_json(rep));
  std::cout << "positivity " << (rep.positivity_ok ? "ok" : "FAILED") << " (min a-b " << rep.min_a_minus_b << ")\n"
            << "periodicity " << (rep.periodicity_ok ? "ok" : "FAILED") << "\n"
            << "end bounds " << (rep.bounds_ok ? "ok" : "FAILED") << "\n"
            << (rep.passed ? "valid" : "invalid") << "\n";
  return rep.passed ? ok : failed;
}

int cmd_angular(const Globals& g) {
  const auto rc = load(g, g.config);
  const auto m = metric::build_metric(rc.metric);
  const auto s = angular::solve_angular(m, rc.lambda, rc.n_channels - 1, rc.angular_modes);
  std::ostringstream os;
  report::write_angular_csv(os, s);
  save_csv(rc, "angular.csv", os);
  std::cout << s.size() << " eigenvalues, modes " << s.modes() << ", doubling change " << s.doubling_change;
  if (s.size() > 100) std::cout << ", Weyl deviation " << angular::weyl_check(s).final_deviation;
  std::cout << "\n";
  return ok;
}

int cmd_scatter(const Globals& g, bool check, const std::string& mu_path) {
  const auto rc = load(g, g.config);
  const auto m = metric::build_metric(rc.metric);
  const auto rp = radial::make_problem(m, rc.lambda, rc.C10, rc.C11);
  scattering::ScatteringOptions so;
  so.tol = g.tol.value_or(rc.tol.radial);
  so.cross_check = check;
  const auto s = angular::solve_angular(m, rc.lambda, rc.n_channels - 1, rc.angular_modes);
  const auto op = scattering::assemble_operator(rp, s, so);
  std::ostringstream os;
  report::write_scatter_csv(os, op);
  save_csv(rc, "scatter.csv", os);
  save_json(rc, "scatter.json", report::to_json(op));

  if (!mu_path.empty()) {
    const auto grid = report::parse_mu_path(mu_path);
    std::vector<report::PathSample> samples(grid.size());
    radial::ChannelOptions co;
    co.tol = so.tol;
    parallel_for(static_cast<int>(grid.size()), [&](int i) {
      samples[i] = {grid[i], radial::channel_functions(rp, grid[i], co)};
    });
    std::ostringstream ps;
    report::write_mu_path_csv(ps, samples);
    save_csv(rc, "mu_path.csv", ps);
  }

  if (!check) return ok;
  double unitarity = 0.0, cross = 0.0;
  int real = 0;
  for (const auto& c : op.channels()) {
    cross = std::max(cross, c.checks.cross_check);
    if (!c.real_channel) continue;
    ++real;
    unitarity = std::max(unitarity, c.unitarity_defect());
  }
  const auto tail = scattering::m_tail(op, std::min(20, real));
  struct Line {
    const char* name;
    double value, limit;
  };
  const Line lines[] = {{"unitarity", unitarity, 1e-6},
                        {"identities", op.identity_defect(), 1e-8},
                        {"independent path", cross, 1e-8},
                        {"|M| bound violations", double(tail.bound_violations), 0.5},
                        {"|M| tail violations", double(tail.violations), 0.5}};
  bool all = true;
  report::json j = report::json::array();
  for (const auto& l : lines) {
    const bool pass = l.value < l.limit;
    all = all && pass;
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << l.name << " " << report::num(l.value) << " (limit "
              << report::num(l.limit) << ")\n";
    j.push_back({{"check", l.name}, {"value", l.value}, {"limit", l.limit}, {"passed", pass}});
  }
  std::cout << real << " real channels of " << op.size() << "\n";
  save_json(rc, "scatter_check.json", {{"passed", all}, {"checks", j}});
  return all ? ok : failed;
}

int cmd_poles(const Globals& g, std::optional<int> count) {
  const auto rc = load(g, g.config);
  const auto m = metric::build_metric(rc.metric);
  const auto rp = radial::make_problem(m, rc.lambda, rc.C10, rc.C11);
  analysis::PoleSearchOptions po;
  po.tol = g.tol.value_or(rc.tol.radial);
  const int n = count.value_or(rc.pole_count);
  if (n < 1) throw Error(Errc::config_error, "--count must be at least 1");
  const auto s = analysis::find_regge_poles(rp, n, 0.0, po);
  std::ostringstream os, bs;
  report::write_poles_csv(os, s.poles);
  save_csv(rc, "poles.csv", os);
  report::write_poles_csv(bs, s.small_zeros);
  save_csv(rc, "small_zeros.csv", bs);
  save_json(rc, "poles.json", report::to_json(s));

  std::vector<double> re, im;
  for (int i = 0; i <= 120; ++i) re.push_back(0.25 * i / m.A());
  for (int i = 0; i <= 100; ++i) im.push_back(0.5 * i);
  const auto br = analysis::bounds_report(rp, re, im);
  save_json(rc, "bounds.json", report::to_json(br));
  int off = 0;
  for (int w : s.off_ladder_winding) off += w != 0;
  std::cout << s.poles.size() << " certified poles below Im " << s.swept_height << " (ladder offset " << s.p_alpha
            << "), " << s.small_zeros.size() << " zeros of delta, " << off << " occupied off-ladder boxes\n"
            << "mu* " << br.mu_star << ", tail violations " << br.tail_violations << ", lower margin "
            << br.lower_margin << "\n";
  return off == 0 ? ok : failed;
}

int cmd_compare(const Globals& g, const std::string& a, const std::string& b, const std::string& expect) {
  const auto ra = load(g, a);
  const auto rb = load(g, b);
  if (ra.lambda != rb.lambda && !g.lambda) throw Error(Errc::config_error, "the two configs use different lambda");
  const auto ma = metric::build_metric(ra.metric);
  const auto mb = metric::build_metric(rb.metric);
  const double tol = g.tol.value_or(ra.tol.compare);
  const auto r = inverse::fingerprint_compare(ma, mb, ra.lambda, ra.n_channels, tol, fs::path(a).stem().string(),
                                              fs::path(b).stem().string());
  save_json(ra, "fingerprint.json", report::to_json(r));
  std::cout << "verdict " << inverse::verdict_name(r.verdict) << "\n"
            << "C " << r.C << " (spread " << r.shift_spread << ")\n"
            << "max M deviation " << r.max_m_deviation << ", max eigenvalue deviation " << r.max_eigen_deviation
            << ", max subspace angle " << r.max_angle << "\n";
  if (!expect.empty()) return expect == inverse::verdict_name(r.verdict) ? ok : failed;
  return r.verdict == inverse::Verdict::inconclusive ? failed : ok;
}

int cmd_verify(const Globals& g, const std::vector<int>& only) {
  verify::VerifyOptions vo;
  RunConfig rc;
  if (!g.config.empty()) {
    rc = load(g, g.config);
    metric::MetricConfig pure;
    pure.A = rc.metric.A;
    pure.B = rc.metric.B;
    vo.families = {{fs::path(g.config).stem().string(), rc.metric}, {"pure_hyperbolic", pure}};
    vo.lambda = rc.lambda;
  } else {
    if (g.out) rc.out_dir = *g.out;
    if (g.lambda) vo.lambda = *g.lambda;
    vo.families = verify::default_families();
  }
  std::vector<verify::Criterion> results;
  const auto print = [](const verify::Criterion& c) { std::cout << verify::format_line(c) << std::endl; };
  if (only.empty()) {
    results = verify::run_all(vo, print);
  } else {
    for (int id : only) {
      results.push_back(verify::run_criterion(id, vo));
      print(results.back());
    }
  }
  bool all = true;
  for (const auto& c : results) all = all && c.passed;
  save_json(rc, "verify.json", report::to_json(results));
  std::cout << (all ? "all criteria passed" : "some criteria FAILED") << "\n";
  return all ? ok : failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fixed-energy scattering on asymptotically hyperbolic Liouville surfaces"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config, "metric and run configuration (TOML)");
  app.add_option("--out", g.out, "output directory");
  app.add_option("--channels", g.channels, "number of angular channels");
  app.add_option("--lambda", g.lambda, "energy parameter");
  app.add_option("--threads", g.threads, "worker threads (overrides AHLS_THREADS)")->check(CLI::NonNegativeNumber);
  app.add_option("--tol", g.tol, "radial tolerance (scatter, poles) or deviation tolerance (compare)")
      ->check(CLI::PositiveNumber);

  auto* validate = app.add_subcommand("validate", "check positivity, periodicity and the end bounds");
  auto* ang = app.add_subcommand("angular", "angular eigenvalues");
  auto* scatter = app.add_subcommand("scatter", "T, L, R per channel");
  bool check = false;
  std::string mu_path;
  scatter->add_flag("--check", check, "run the invariant checks, exit 1 on failure");
  scatter->add_option("--mu-path", mu_path, "sample Delta, delta, M at a:b:n real mu");
  auto* poles = app.add_subcommand("poles", "Regge poles and boundedness scans");
  std::optional<int> count;
  poles->add_option("--count", count, "number of poles to certify");
  auto* compare = app.add_subcommand("compare", "fingerprint two metrics");
  std::string cfg_a, cfg_b, expect;
  compare->add_option("first", cfg_a, "first config")->required();
  compare->add_option("second", cfg_b, "second config")->required();
  compare->add_option("--expect", expect, "exit 1 unless this verdict is reached")
      ->check(CLI::IsMember({"indistinguishable", "distinguished", "inconclusive"}));
  auto* ver = app.add_subcommand("verify", "run the acceptance criteria");
  std::vector<int> only;
  ver->add_option("--only", only, "criterion ids")->delimiter(',')->check(CLI::Range(1, 10));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : bad_input;
  }
  if (g.threads) set_thread_count(*g.threads);

  try {
    if (*validate) return cmd_validate(g);
    if (*ang) return cmd_angular(g);
    if (*scatter) return cmd_scatter(g, check, mu_path);
    if (*poles) return cmd_poles(g, count);
    if (*compare) return cmd_compare(g, cfg_a, cfg_b, expect);
    if (*ver) return cmd_verify(g, only);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == Errc::config_error ? bad_input : failed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return failed;
  }
  return bad_input;
}
