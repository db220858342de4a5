#pragma once

// Periodic eigenproblem -v'' + (λ²+¼) b(y) v = μ² v on (0, B), solved in the
// Fourier basis e_k(y) = e^{2πiky/B}/√B, k = -K..K.

#include <vector>

#include <Eigen/Dense>

#include "ahls/error.hpp"
#include "ahls/metric.hpp"

namespace ahls::angular {

struct AngularSpectrum {
  double lambda = 0.0;
  double B = 0.0;
  double kappa = 0.0;
  int K = 0;  // modes = 2K+1
  std::vector<double> eigenvalues;          // μ_n², ascending
  std::vector<Eigen::VectorXcd> coefficients;  // index i <-> mode k = i - K
  std::vector<int> cluster;                 // eigenspace cluster id per n (gap cluster_gap)
  double doubling_change = 0.0;             // max relative eigenvalue change under mode doubling

  int modes() const { return 2 * K + 1; }
  int size() const { return static_cast<int>(eigenvalues.size()); }
  cplx eigenfunction(int n, double y) const;
  // Y_n'' at y
  cplx eigenfunction_dd(int n, double y) const;
};

struct MomentumChannel {
  int n = 0;
  double mu_sq = 0.0;
  cplx mu = 0.0;
  bool on_branch_cut = false;  // μ = 0
};

// Relative gap under which eigenvalues are treated as one eigenspace.
inline constexpr double cluster_gap = 1e-6;

// Lowest n_max+1 eigenpairs. modes = 0 picks max(4 n_max + 1, 64). Throws
// ResolutionInsufficient when doubling the mode count moves an eigenvalue by
// more than 1e-9 relative.
AngularSpectrum solve_angular(const metric::LiouvilleMetric& m, double lambda, int n_max, int modes = 0,
                              bool check_resolution = true);

// Fourier coefficients b̂_m, m = 0..max_m, of b on (0, B).
std::vector<cplx> fourier_coefficients(const metric::LiouvilleMetric& m, int max_m);

// Dense Hermitian Galerkin matrix, for cross-checks.
Eigen::MatrixXcd galerkin_matrix(const metric::LiouvilleMetric& m, double lambda, int K);

std::vector<MomentumChannel> momenta(const AngularSpectrum& s);
MomentumChannel momentum(int n, double mu_sq);

struct WeylDiagnostics {
  std::vector<double> ratio;  // μ_n²/n², n ≥ 1
  double limit = 0.0;         // π²/B²
  double final_deviation = 0.0;
  bool passed = false;
};
WeylDiagnostics weyl_check(const AngularSpectrum& s);

struct MuntzDiagnostics {
  std::vector<double> partial_sums;  // Σ_{m≤n, μ_m≠0} 1/|μ_m|
  double slope = 0.0;                // least-squares slope against log n
  double predicted_slope = 0.0;      // B/π
};
MuntzDiagnostics muntz_partial_sums(const AngularSpectrum& s);

// ‖-Y'' + κ b Y - μ² Y‖₂ / ‖Y‖₂ on a uniform grid.
double residual(const AngularSpectrum& s, const metric::LiouvilleMetric& m, int n, int grid = 256);

// max |<Y_i, Y_j> - δ_ij|
double gram_defect(const AngularSpectrum& s);

// Index ranges [first, last] of eigenspace clusters.
std::vector<std::pair<int, int>> clusters(const AngularSpectrum& s);

// Largest principal angle between the spans of columns [first, last] of two
// spectra (padded to a common mode range).
double subspace_angle(const AngularSpectrum& s1, int first1, int last1, const AngularSpectrum& s2, int first2,
                      int last2);

}  // namespace ahls::angular
