#include "ahls/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <toml.hpp>

namespace ahls {

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& msg) {
  throw Error(Errc::config_error, origin + ": " + msg);
}

void check_keys(const toml::table& t, const std::set<std::string>& allowed, const std::string& where,
                const std::string& origin) {
  for (const auto& [k, v] : t) {
    if (!allowed.count(std::string(k.str()))) fail(origin, "unknown key '" + where + std::string(k.str()) + "'");
  }
}

double number(const toml::node& n, const std::string& key, const std::string& origin) {
  if (auto v = n.value<double>()) return *v;
  fail(origin, "'" + key + "' must be a number");
}

cplx complex_value(const toml::node& n, const std::string& key, const std::string& origin) {
  if (auto v = n.value<double>()) return *v;
  if (const auto* arr = n.as_array(); arr && arr->size() == 2) {
    return {number(*arr->get(0), key, origin), number(*arr->get(1), key, origin)};
  }
  fail(origin, "'" + key + "' must be a number or [re, im]");
}

std::vector<double> number_list(const toml::node& n, const std::string& key, const std::string& origin) {
  const auto* arr = n.as_array();
  if (!arr) fail(origin, "'" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : *arr) out.push_back(number(e, key, origin));
  return out;
}

int integer(const toml::node& n, const std::string& key, const std::string& origin) {
  if (auto v = n.value<int64_t>()) return static_cast<int>(*v);
  fail(origin, "'" + key + "' must be an integer");
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& origin) {
  toml::table root;
  try {
    root = toml::parse(text, origin);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << e.description() << " (line " << e.source().begin.line << ")";
    fail(origin, os.str());
  }
  check_keys(root, {"metric", "run", "tolerances"}, "", origin);

  RunConfig rc;
  rc.source = origin;
  const auto* mt = root["metric"].as_table();
  if (!mt) fail(origin, "missing [metric] table");
  check_keys(*mt,
             {"family", "A", "B", "eps0", "eps1", "delta", "params", "p_samples", "b_samples", "spline_order"},
             "metric.", origin);
  auto& mc = rc.metric;
  if (auto f = (*mt)["family"].value<std::string>()) mc.family = *f;
  if (const auto* n = mt->get("A")) mc.A = number(*n, "metric.A", origin);
  const auto* nb = mt->get("B");
  if (!nb) fail(origin, "missing required field 'metric.B'");
  mc.B = number(*nb, "metric.B", origin);
  if (const auto* n = mt->get("eps0")) mc.eps0 = number(*n, "metric.eps0", origin);
  if (const auto* n = mt->get("eps1")) mc.eps1 = number(*n, "metric.eps1", origin);
  if (const auto* n = mt->get("delta")) mc.delta = number(*n, "metric.delta", origin);
  if (const auto* n = mt->get("spline_order")) mc.spline_order = integer(*n, "metric.spline_order", origin);
  if (const auto* n = mt->get("p_samples")) mc.p_samples = number_list(*n, "metric.p_samples", origin);
  if (const auto* n = mt->get("b_samples")) mc.b_samples = number_list(*n, "metric.b_samples", origin);
  if (const auto* n = mt->get("params")) {
    const auto* pt = n->as_table();
    if (!pt) fail(origin, "'metric.params' must be a table");
    for (const auto& [k, v] : *pt) {
      const std::string key(k.str());
      mc.params[key] = number(v, "metric.params." + key, origin);
    }
  }
  if (!(mc.A > 0.0)) fail(origin, "'metric.A' must be positive");
  if (!(mc.B > 0.0)) fail(origin, "'metric.B' must be positive");

  if (const auto* rt = root["run"].as_table()) {
    check_keys(*rt, {"lambda", "channels", "C10", "C11", "angular_modes", "pole_count", "out"}, "run.", origin);
    if (const auto* n = rt->get("lambda")) rc.lambda = number(*n, "run.lambda", origin);
    if (const auto* n = rt->get("channels")) rc.n_channels = integer(*n, "run.channels", origin);
    if (const auto* n = rt->get("C10")) rc.C10 = complex_value(*n, "run.C10", origin);
    if (const auto* n = rt->get("C11")) rc.C11 = complex_value(*n, "run.C11", origin);
    if (const auto* n = rt->get("angular_modes")) rc.angular_modes = integer(*n, "run.angular_modes", origin);
    if (const auto* n = rt->get("pole_count")) rc.pole_count = integer(*n, "run.pole_count", origin);
    if (auto s = (*rt)["out"].value<std::string>()) rc.out_dir = *s;
  }
  if (const auto* tt = root["tolerances"].as_table()) {
    check_keys(*tt, {"radial", "compare", "shift"}, "tolerances.", origin);
    if (const auto* n = tt->get("radial")) rc.tol.radial = number(*n, "tolerances.radial", origin);
    if (const auto* n = tt->get("compare")) rc.tol.compare = number(*n, "tolerances.compare", origin);
    if (const auto* n = tt->get("shift")) rc.tol.shift = number(*n, "tolerances.shift", origin);
  }
  if (rc.lambda == 0.0 || !std::isfinite(rc.lambda)) fail(origin, "'run.lambda' must be nonzero");
  if (rc.n_channels < 1) fail(origin, "'run.channels' must be at least 1");
  if (rc.C10 == 0.0 || rc.C11 == 0.0) fail(origin, "'run.C10' and 'run.C11' must be nonzero");
  if (!(rc.tol.radial > 0.0) || !(rc.tol.compare > 0.0) || !(rc.tol.shift > 0.0)) {
    fail(origin, "tolerances must be positive");
  }
  return rc;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::config_error, path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

}  // namespace ahls
