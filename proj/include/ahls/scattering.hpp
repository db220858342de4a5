#pragma once

// Per-channel 2x2 scattering matrices S = [[L, T], [T, R]] and the
// block-diagonal operator over an angular spectrum.

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "ahls/angular.hpp"
#include "ahls/radial.hpp"

namespace ahls::scattering {

// ω₋/ω₊ = Γ(1-iλ)/Γ(1+iλ). Throws ZeroEnergy at λ = 0.
cplx omega_ratio(double lambda);

// 2iλ ω₋/ω₊, the common factor of T, L and R.
cplx scattering_factor(double lambda);

struct ChannelChecks {
  // S-matrix unitarity; NaN on imaginary channels
  double t_plus_l = 0.0;       // ||T|² + |L|² - 1|
  double t_plus_r = 0.0;       // ||T|² + |R|² - 1|
  double cross = 0.0;          // |L conj(T) + T conj(R)|
  double s_unitary = 0.0;      // max |(S*S - I)_ij|
  double relation = 0.0;       // |4λ²|C10|²(|M|²|C10|² + |C11|²/|Δ|²) - 1|
  double delta_relation = 0.0; // |Δ|²/(4λ²|C10 C11|²) - |C10/C11|²|δ|² - 1, relative to the first term
  double r_conjugate = 0.0;    // R against its conjugate-Wronskian form, relative
  double r_modulus = 0.0;      // ||R| - 2|λ||C10|²|M|| (modulus form of R through M)
  // definition identities
  double delta_times_t = 0.0;  // |Δ T - 2iλ C10 C11 ω₋/ω₊| / |2λ C10 C11|
  double l_from_m = 0.0;       // |L + 2iλ C10² ω₋/ω₊ M| / max(1, |L|)
  // independent evaluation of a0/b0, a1/b1 (Picard on real channels, ODE at another match point otherwise)
  double cross_check = 0.0;    // max relative deviation of T, L, R
};

struct ChannelScattering {
  angular::MomentumChannel channel;
  radial::ChannelFunctions funcs;
  cplx T, L, R;
  Eigen::Matrix2cd S;
  bool real_channel = true;  // μ² ≥ 0; unitarity only claimed there
  ChannelChecks checks;

  // Largest of the unitarity defects (NaN on imaginary channels).
  double unitarity_defect() const;
};

struct ScatteringOptions {
  double tol = 1e-12;
  bool cross_check = true;
};

ChannelScattering channel_scattering(const radial::RadialProblem& rp, const angular::MomentumChannel& ch,
                                     const ScatteringOptions& opt = {});

class ScatteringOperator {
 public:
  ScatteringOperator(double lambda, cplx C10, cplx C11, std::vector<ChannelScattering> channels,
                     std::shared_ptr<const angular::AngularSpectrum> spectrum);

  double lambda() const { return lambda_; }
  cplx C10() const { return C10_; }
  cplx C11() const { return C11_; }
  const std::vector<ChannelScattering>& channels() const { return channels_; }
  const angular::AngularSpectrum& spectrum() const { return *spectrum_; }
  int size() const { return static_cast<int>(channels_.size()); }

  // Eigenvalues of Δ(λ) and M(λ) on Y_n.
  std::vector<cplx> delta_eigenvalues() const;
  std::vector<cplx> m_eigenvalues() const;

  // max over channels of the operator identities Δ·T and L(M)
  double identity_defect() const;

 private:
  double lambda_;
  cplx C10_, C11_;
  std::vector<ChannelScattering> channels_;
  std::shared_ptr<const angular::AngularSpectrum> spectrum_;
};

// One channel per eigenvalue of s; equal μ² share one radial solve.
ScatteringOperator assemble_operator(const radial::RadialProblem& rp, const angular::AngularSpectrum& s,
                                     const ScatteringOptions& opt = {});

// |Unitary-Delta LHS - 1| per channel, scaled by max(1, |Δ|²/(4λ²|C10 C11|²));
// NaN on imaginary channels.
std::vector<double> unitarity_defect(const ScatteringOperator& op);

// |M| bound 1/(2|λ||C10|²) and its monotone approach along the real tail,
// one step per eigenspace cluster. Differences below noise·bound are ties.
struct MTail {
  double bound = 0.0;
  int channels = 0;        // clusters covering the last `count` real channels
  int violations = 0;
  int ties = 0;            // steps decided by |Δ| instead
  int bound_violations = 0;  // |M| > bound (1 + noise)
  double top_gap = 0.0;    // 1 - |M|/bound at the top channel
};
MTail m_tail(const ScatteringOperator& op, int count = 20, double noise = 1e-12);

}  // namespace ahls::scattering
