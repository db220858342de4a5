#include "ahls/error.hpp"

namespace ahls {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::pole_of_gamma: return "PoleOfGamma";
    case Errc::non_convergence: return "NonConvergence";
    case Errc::domain_error: return "DomainError";
    case Errc::invalid_family: return "InvalidFamily";
    case Errc::positivity_violation: return "PositivityViolation";
    case Errc::validation_failed: return "ValidationFailed";
    case Errc::zero_energy: return "ZeroEnergy";
    case Errc::resolution_insufficient: return "ResolutionInsufficient";
    case Errc::zero_momentum: return "ZeroMomentum";
    case Errc::no_convergence: return "NoConvergence";
    case Errc::quadrature_failure: return "QuadratureFailure";
    case Errc::stiffness_failure: return "StiffnessFailure";
    case Errc::at_regge_pole: return "AtReggePole";
    case Errc::sector_error: return "SectorError";
    case Errc::pole_missed: return "PoleMissed";
    case Errc::inconsistent_shift: return "InconsistentShift";
    case Errc::incompatible_b: return "IncompatibleB";
    case Errc::config_error: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace ahls

#include <cstdlib>
#include <thread>

#include "ahls/parallel.hpp"

namespace ahls {

namespace {
std::atomic<int> g_threads{-1};
}

void set_thread_count(int n) { g_threads = std::max(0, n); }

int thread_count() {
  int n = g_threads.load();
  if (n < 0) {
    n = 0;
    if (const char* env = std::getenv("AHLS_THREADS")) n = std::max(0, std::atoi(env));
  }
  if (n == 0) n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return n;
}

}  // namespace ahls
