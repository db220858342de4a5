#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "ahls/config.hpp"

namespace fs = std::filesystem;
using namespace ahls;

namespace {

const std::string src = AHLS_SOURCE_DIR;

std::string cfg(const std::string& name) { return src + "/configs/" + name + ".toml"; }

struct Run {
  int code;
  std::string out, err;
};

fs::path scratch(const std::string& tag) {
  const auto d = fs::temp_directory_path() / ("ahls_cli_" + tag);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run(const std::string& args, const fs::path& dir, const std::string& env = "") {
  const char* cli = std::getenv("AHLS_CLI");
  REQUIRE(cli != nullptr);
  const auto o = dir / "stdout.txt", e = dir / "stderr.txt";
  const std::string cmd = env + " '" + std::string(cli) + "' " + args + " > '" + o.string() + "' 2> '" + e.string() + "'";
  const int st = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(st));
  return {WEXITSTATUS(st), slurp(o), slurp(e)};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("config parsing errors") {
  const std::string base = "[metric]\nA = 1.0\nB = 6.283185307179586\n";
  CHECK_NOTHROW(parse_config(base));
  const auto msg = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::config_error);
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(msg("[metric]\nA = 1.0\n").find("metric.B") != std::string::npos);
  CHECK(msg(base + "C = 2\n").find("metric.C") != std::string::npos);
  CHECK(msg(base + "[run]\nlambda = 0\n").find("run.lambda") != std::string::npos);
  CHECK(msg(base + "[run]\nchannels = 0\n").find("run.channels") != std::string::npos);
  CHECK(msg(base + "[run]\nchanels = 3\n").find("run.chanels") != std::string::npos);
  CHECK(msg("[metric\n").find("line") != std::string::npos);
  CHECK(msg("[metric]\nA = -1\nB = 1\n").find("metric.A") != std::string::npos);

  const auto rc = parse_config(base + "[run]\nC10 = [1.0, 2.0]\nchannels = 7\n");
  CHECK(rc.C10 == cplx(1.0, 2.0));
  CHECK(rc.n_channels == 7);
  CHECK_THROWS_AS(load_config(src + "/configs/does_not_exist.toml"), Error);
}

TEST_CASE("validate exit codes") {
  const auto d = scratch("validate");
  auto r = run("validate --config " + cfg("hyperbolic_bump") + " --out " + d.string(), d);
  CHECK(r.code == 0);
  CHECK(fs::exists(d / "validation.json"));
  r = run("validate --config " + cfg("aperiodic") + " --out " + d.string(), d);
  CHECK(r.code == 1);
  r = run("validate --config " + cfg("missing_b") + " --out " + d.string(), d);
  CHECK(r.code == 2);
  CHECK(r.err.find("metric.B") != std::string::npos);
  r = run("validate --config " + (d / "nope.toml").string(), d);
  CHECK(r.code == 2);
}

TEST_CASE("bad invocations exit 2") {
  const auto d = scratch("bad");
  CHECK(run("", d).code == 2);
  CHECK(run("frobnicate", d).code == 2);
  CHECK(run("scatter --config " + cfg("hyperbolic_bump") + " --bogus", d).code == 2);
  CHECK(run("scatter", d).code == 2);
  CHECK(run("scatter --config " + cfg("hyperbolic_bump") + " --out " + d.string() + " --mu-path 1:2", d).code == 2);
  CHECK(run("scatter --config " + cfg("hyperbolic_bump") + " --out " + d.string() + " --mu-path a:2:3", d).code == 2);
  CHECK(run("verify --only 11", d).code == 2);
  CHECK(run("compare " + cfg("hyperbolic_bump") + " " + cfg("pure_hyperbolic") + " --expect maybe", d).code == 2);
  CHECK(run("--help", d).code == 0);
}

TEST_CASE("scatter output") {
  const auto d = scratch("scatter");
  const auto r = run("scatter --config " + cfg("hyperbolic_bump") + " --out " + d.string() +
                         " --check --mu-path 0:40:200",
                     d);
  REQUIRE(r.code == 0);
  const auto csv = lines(slurp(d / "scatter.csv"));
  REQUIRE(csv.size() == 31);
  CHECK(csv[0] == "n,mu_sq,T_re,T_im,L_re,L_im,R_re,R_im,unitarity_defect");
  for (size_t i = 1; i < csv.size(); ++i) CHECK(std::count(csv[i].begin(), csv[i].end(), ',') == 8);
  CHECK(fs::exists(d / "scatter.json"));
  CHECK(fs::exists(d / "scatter_check.json"));
  const auto path = lines(slurp(d / "mu_path.csv"));
  CHECK(path.size() == 201);
  CHECK(path[0].rfind("mu,mu_sq,Delta_re", 0) == 0);
}

TEST_CASE("scatter output is reproducible across thread counts") {
  const auto d1 = scratch("repro1"), d2 = scratch("repro2"), d3 = scratch("repro3");
  const std::string base = "scatter --config " + cfg("hyperbolic_bump") + " --channels 12 --out ";
  REQUIRE(run(base + d1.string(), d1).code == 0);
  REQUIRE(run(base + d2.string(), d2, "AHLS_THREADS=3").code == 0);
  REQUIRE(run(base + d3.string() + " --threads 1", d3, "AHLS_THREADS=4").code == 0);
  const auto a = slurp(d1 / "scatter.csv");
  CHECK(lines(a).size() == 13);
  CHECK(a == slurp(d2 / "scatter.csv"));
  CHECK(a == slurp(d3 / "scatter.csv"));
  CHECK(slurp(d1 / "scatter.json") == slurp(d3 / "scatter.json"));
}

TEST_CASE("angular and tabulated config") {
  const auto d = scratch("angular");
  REQUIRE(run("angular --config " + cfg("tabulated") + " --channels 20 --out " + d.string(), d).code == 0);
  const auto csv = lines(slurp(d / "angular.csv"));
  REQUIRE(csv.size() >= 21);
  CHECK(csv[0] == "n,mu_sq,cluster");
}

TEST_CASE("compare verdicts") {
  const auto d = scratch("compare");
  auto r = run("compare " + cfg("hyperbolic_bump") + " " + cfg("hyperbolic_bump_gauge") + " --channels 20 --out " +
                   d.string(),
               d);
  CHECK(r.code == 0);
  CHECK(r.out.find("indistinguishable") != std::string::npos);
  CHECK(slurp(d / "fingerprint.json").find("\"indistinguishable\"") != std::string::npos);

  r = run("compare " + cfg("hyperbolic_bump") + " " + cfg("hyperbolic_bump_gauge") +
              " --channels 20 --expect distinguished --out " + d.string(),
          d);
  CHECK(r.code == 1);
  r = run("compare " + cfg("hyperbolic_bump") + " " + cfg("perturbed_bump") +
              " --channels 20 --expect distinguished --out " + d.string(),
          d);
  CHECK(r.code == 0);
}

TEST_CASE("poles output") {
  const auto d = scratch("poles");
  const auto r = run("poles --config " + cfg("hyperbolic_bump") + " --count 16 --out " + d.string(), d);
  REQUIRE(r.code == 0);
  const auto csv = lines(slurp(d / "poles.csv"));
  CHECK(csv[0] == "n,alpha_re,alpha_im,residual,winding");
  CHECK(csv.size() >= 16);
  CHECK(fs::exists(d / "poles.json"));
  CHECK(fs::exists(d / "bounds.json"));
}

TEST_CASE("verify subset") {
  const auto d = scratch("verify");
  const auto r = run("verify --only 1,4 --out " + d.string(), d);
  CHECK(r.code == 0);
  CHECK(lines(r.out).size() >= 2);
  CHECK(r.out.find("[PASS] 1 ") != std::string::npos);
  CHECK(r.out.find("[PASS] 4 ") != std::string::npos);
  CHECK(r.out.find("[PASS] 2 ") == std::string::npos);
  CHECK(fs::exists(d / "verify.json"));
}
