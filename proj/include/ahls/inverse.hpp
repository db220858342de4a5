#pragma once

// Consistency checks around uniqueness: invariance of Δ, M under a constant
// potential shift, gauge pairs (a + C, b + C), and metric fingerprints.

#include <string>
#include <vector>

#include "ahls/angular.hpp"
#include "ahls/radial.hpp"

namespace ahls::inverse {

// max relative deviation of Δ, δ, M between q at μ² and q + L at μ² - L,
// from two independent radial solves.
double shift_invariance_test(const radial::RadialProblem& rp, cplx L, const std::vector<cplx>& mu_samples);

struct AngularShift {
  double C = 0.0;           // median of (μ_n² - μ̃_n²)/(λ²+¼), so b̃ = b - C
  double spread = 0.0;      // max - min of the per-channel estimates
  double b_residual = 0.0;  // sup |b - b̃ - C| when metrics are given, else spread
  std::vector<double> estimates;
};

// Throws InconsistentShift when the spread exceeds 1e-6, IncompatibleB when
// the periods differ.
AngularShift recover_angular_shift(const angular::AngularSpectrum& s1, const angular::AngularSpectrum& s2,
                                   double lambda);
AngularShift recover_angular_shift(const angular::AngularSpectrum& s1, const angular::AngularSpectrum& s2,
                                   double lambda, const metric::LiouvilleMetric& m1,
                                   const metric::LiouvilleMetric& m2, int grid = 512);

enum class Verdict { indistinguishable, distinguished, inconclusive };
const char* verdict_name(Verdict v);

struct ChannelRow {
  int n = 0;
  double mu_sq = 0.0, mu_sq_tilde = 0.0;
  cplx Delta, Delta_tilde, M, M_tilde;
  double eigen_deviation = 0.0;  // |μ_n² - μ̃_n² - C(λ²+¼)| / max(1, |μ_n²|)
  double m_deviation = 0.0;      // |M - M̃| / max(|M|, |M̃|)
  double delta_deviation = 0.0;  // |Δ - Δ̃| / max(|Δ|, |Δ̃|)
};

struct ClusterFlag {
  int first = 0, last = 0;
  double angle = 0.0;
};

struct FingerprintReport {
  std::string name1, name2;
  double lambda = 0.0;
  double tol = 0.0;
  std::vector<ChannelRow> channels;
  double C = 0.0;
  double shift_spread = 0.0;
  bool shift_consistent = true;
  double max_eigen_deviation = 0.0;
  double max_m_deviation = 0.0;
  double max_delta_deviation = 0.0;
  double max_angle = 0.0;              // largest principal angle over eigenspace clusters
  std::vector<ClusterFlag> clusters;   // clusters of size > 1
  int distinguished_channels = 0;      // channels deviating by more than 10 tol
  double off_lattice_deviation = 0.0;  // gauge pairs only: M at non-eigenvalue μ²
  Verdict verdict = Verdict::inconclusive;
};

// indistinguishable: every channel deviation and cluster angle below tol.
// distinguished: at least 3 channels deviate by more than 10 tol.
FingerprintReport fingerprint_compare(const metric::LiouvilleMetric& m1, const metric::LiouvilleMetric& m2,
                                      double lambda, int n_channels, double tol = 1e-6,
                                      const std::string& name1 = "m1", const std::string& name2 = "m2");

// m against m.gauge_shifted(C), plus M at a few real μ off the eigenvalues.
FingerprintReport gauge_equivalence_test(const metric::LiouvilleMetric& m, double C, double lambda, int n_channels,
                                         double tol = 1e-6);

}  // namespace ahls::inverse
