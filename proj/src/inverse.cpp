#include "ahls/inverse.hpp"

#include <algorithm>
#include <cmath>

#include "ahls/parallel.hpp"
#include "ahls/scattering.hpp"

namespace ahls::inverse {

namespace {

constexpr double max_spread = 1e-6;

double rel(cplx a, cplx b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

void check_compatible(const angular::AngularSpectrum& s1, const angular::AngularSpectrum& s2, double lambda) {
  if (std::abs(s1.B - s2.B) > 1e-12 * std::max(s1.B, s2.B)) {
    throw Error(Errc::incompatible_b, "periods differ: " + std::to_string(s1.B) + " vs " + std::to_string(s2.B));
  }
  if (s1.lambda != lambda || s2.lambda != lambda) throw Error(Errc::domain_error, "spectra at a different λ");
}

AngularShift estimate(const angular::AngularSpectrum& s1, const angular::AngularSpectrum& s2, double lambda) {
  check_compatible(s1, s2, lambda);
  const double kappa = lambda * lambda + 0.25;
  const int n = std::min(s1.size(), s2.size());
  if (n < 1) throw Error(Errc::domain_error, "empty spectrum");
  AngularShift r;
  for (int i = 0; i < n; ++i) r.estimates.push_back((s1.eigenvalues[i] - s2.eigenvalues[i]) / kappa);
  auto sorted = r.estimates;
  std::sort(sorted.begin(), sorted.end());
  r.C = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  r.spread = sorted.back() - sorted.front();
  r.b_residual = r.spread;
  return r;
}

void require_consistent(const AngularShift& r) {
  if (r.spread > max_spread) {
    throw Error(Errc::inconsistent_shift,
                "per-channel shift estimates spread by " + std::to_string(r.spread) + "; spectra are not shift-related");
  }
}

struct Pipeline {
  angular::AngularSpectrum spectrum;
  std::vector<scattering::ChannelScattering> channels;
};

Pipeline run(const metric::LiouvilleMetric& m, double lambda, int n_channels) {
  Pipeline p;
  // a few extra eigenpairs so the last compared cluster is complete
  p.spectrum = angular::solve_angular(m, lambda, n_channels + 3);
  scattering::ScatteringOptions opt;
  opt.cross_check = false;
  p.channels = scattering::assemble_operator(radial::make_problem(m, lambda), p.spectrum, opt).channels();
  return p;
}

}  // namespace

double shift_invariance_test(const radial::RadialProblem& rp, cplx L, const std::vector<cplx>& mu_samples) {
  const auto shifted = rp.shifted(L);
  std::vector<double> dev(mu_samples.size());
  parallel_for(static_cast<int>(mu_samples.size()), [&](int i) {
    const cplx mu = mu_samples[i];
    const cplx nu = std::sqrt(mu * mu - L);
    const auto a = radial::channel_functions_strict(rp, mu);
    const auto b = radial::channel_functions_strict(shifted, nu.real() < 0.0 ? -nu : nu);
    dev[i] = std::max({rel(a.Delta, b.Delta), rel(a.delta_small, b.delta_small), rel(a.M, b.M)});
  });
  return dev.empty() ? 0.0 : *std::max_element(dev.begin(), dev.end());
}

AngularShift recover_angular_shift(const angular::AngularSpectrum& s1, const angular::AngularSpectrum& s2,
                                   double lambda) {
  auto r = estimate(s1, s2, lambda);
  require_consistent(r);
  return r;
}

AngularShift recover_angular_shift(const angular::AngularSpectrum& s1, const angular::AngularSpectrum& s2,
                                   double lambda, const metric::LiouvilleMetric& m1,
                                   const metric::LiouvilleMetric& m2, int grid) {
  auto r = estimate(s1, s2, lambda);
  require_consistent(r);
  r.b_residual = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double y = m1.B() * i / grid;
    r.b_residual = std::max(r.b_residual, std::abs(m1.b(y) - m2.b(y) - r.C));
  }
  return r;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::indistinguishable:
      return "indistinguishable";
    case Verdict::distinguished:
      return "distinguished";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

FingerprintReport fingerprint_compare(const metric::LiouvilleMetric& m1, const metric::LiouvilleMetric& m2,
                                      double lambda, int n_channels, double tol, const std::string& name1,
                                      const std::string& name2) {
  if (std::abs(m1.B() - m2.B()) > 1e-12 * std::max(m1.B(), m2.B())) {
    throw Error(Errc::incompatible_b, "periods differ: " + std::to_string(m1.B()) + " vs " + std::to_string(m2.B()));
  }
  if (n_channels < 1) throw Error(Errc::domain_error, "need at least one channel");
  if (!(tol > 0.0)) throw Error(Errc::domain_error, "tolerance must be positive");

  Pipeline p[2];
  const metric::LiouvilleMetric* ms[2] = {&m1, &m2};
  parallel_for(2, [&](int i) { p[i] = run(*ms[i], lambda, n_channels); });

  FingerprintReport r;
  r.name1 = name1;
  r.name2 = name2;
  r.lambda = lambda;
  r.tol = tol;
  const auto shift = estimate(p[0].spectrum, p[1].spectrum, lambda);
  r.C = shift.C;
  r.shift_spread = shift.spread;
  r.shift_consistent = shift.spread <= max_spread;

  for (const auto& [first, last] : angular::clusters(p[0].spectrum)) {
    if (first >= n_channels || last + 1 >= p[0].spectrum.size()) break;
    const double angle = angular::subspace_angle(p[0].spectrum, first, last, p[1].spectrum, first, last);
    r.max_angle = std::max(r.max_angle, angle);
    if (last > first) r.clusters.push_back({first, last, angle});
  }

  const double kappa = lambda * lambda + 0.25;
  for (int n = 0; n < n_channels; ++n) {
    const auto &a = p[0].channels[n], &b = p[1].channels[n];
    ChannelRow row;
    row.n = n;
    row.mu_sq = a.channel.mu_sq;
    row.mu_sq_tilde = b.channel.mu_sq;
    row.Delta = a.funcs.Delta;
    row.Delta_tilde = b.funcs.Delta;
    row.M = a.funcs.M;
    row.M_tilde = b.funcs.M;
    row.eigen_deviation = std::abs(row.mu_sq - row.mu_sq_tilde - r.C * kappa) / std::max(1.0, std::abs(row.mu_sq));
    row.m_deviation = rel(row.M, row.M_tilde);
    row.delta_deviation = rel(row.Delta, row.Delta_tilde);
    r.max_eigen_deviation = std::max(r.max_eigen_deviation, row.eigen_deviation);
    r.max_m_deviation = std::max(r.max_m_deviation, row.m_deviation);
    r.max_delta_deviation = std::max(r.max_delta_deviation, row.delta_deviation);
    const double worst = std::max({row.eigen_deviation, row.m_deviation, row.delta_deviation});
    if (worst > 10.0 * tol) ++r.distinguished_channels;
    r.channels.push_back(row);
  }

  const double worst = std::max({r.max_eigen_deviation, r.max_m_deviation, r.max_delta_deviation, r.max_angle});
  if (worst < tol && r.shift_consistent) {
    r.verdict = Verdict::indistinguishable;
  } else if (r.distinguished_channels >= 3) {
    r.verdict = Verdict::distinguished;
  } else {
    r.verdict = Verdict::inconclusive;
  }
  return r;
}

FingerprintReport gauge_equivalence_test(const metric::LiouvilleMetric& m, double C, double lambda, int n_channels,
                                         double tol) {
  const auto g = m.gauge_shifted(C);
  auto r = fingerprint_compare(m, g, lambda, n_channels, tol, "metric", "gauge");
  // between eigenvalues: M(μ²) against M̃(μ² + C(λ²+¼))
  const auto rp = radial::make_problem(m, lambda), rg = radial::make_problem(g, lambda);
  const double kappa = lambda * lambda + 0.25;
  for (double mu : {0.7, 2.3, 5.1}) {
    const cplx nu = std::sqrt(cplx(mu * mu + C * kappa));
    const auto a = radial::channel_functions_strict(rp, mu);
    const auto b = radial::channel_functions_strict(rg, nu);
    r.off_lattice_deviation = std::max(r.off_lattice_deviation, rel(a.M, b.M));
  }
  if (r.verdict == Verdict::indistinguishable && r.off_lattice_deviation >= tol) r.verdict = Verdict::inconclusive;
  return r;
}

}  // namespace ahls::inverse
