#pragma once

// Fundamental systems of u'' = (q(x) + μ²) u normalized at either end, and
// the Wronskians Δ = W(S11, S10), δ = W(S11, S20), M = -δ/Δ built from them.

#include <vector>

#include "ahls/error.hpp"
#include "ahls/metric.hpp"

namespace ahls::radial {

enum class End { left, right };

class RadialProblem {
 public:
  // Both ends must be hyperbolic with unit coefficient (c0 = c1 = 1).
  explicit RadialProblem(metric::RadialPotential potential, cplx C10 = 1.0, cplx C11 = 1.0);

  const metric::RadialPotential& potential() const { return pot_; }
  double lambda() const { return pot_.lambda(); }
  double kappa() const { return pot_.kappa(); }
  double A() const { return pot_.A(); }
  cplx C10() const { return C10_; }
  cplx C11() const { return C11_; }
  cplx C(End e) const { return e == End::left ? C10_ : C11_; }

  RadialProblem shifted(cplx L) const { return RadialProblem(pot_.shifted(L), C10_, C11_); }
  RadialProblem with_constants(cplx C10, cplx C11) const { return RadialProblem(pot_, C10, C11); }

 private:
  metric::RadialPotential pot_;
  cplx C10_, C11_;
};

RadialProblem make_problem(const metric::LiouvilleMetric& m, double lambda, cplx C10 = 1.0, cplx C11 = 1.0);

// Values and x-derivatives of the two solutions normalized at one end:
// (S10, S20) for End::left, (S11, S21) for End::right.
struct FssEvaluation {
  cplx mu;
  End end = End::left;
  std::vector<double> grid;
  std::vector<cplx> S1, dS1, S2, dS2;
  int terms = 0;                   // Picard terms used (0 for the ODE path)
  std::vector<double> term_norms;  // sup-norm of each Picard term, scaled by e^{-Re(μ) s}
  double x_start = 0.0;            // ODE start offset from the end
};

cplx wronskian(cplx f, cplx df, cplx g, cplx dg);

// √(xt) (I_{iλ}(μx) K_{iλ}(μt) - I_{iλ}(μt) K_{iλ}(μx)), 0 < t ≤ x.
cplx green_kernel(double x, double t, cplx mu, double lambda);

struct SeedValue {
  cplx g1, dg1, g2, dg2;  // d/dx
};

// Bessel-form seeds of the Picard series, normalized so that as the end is
// approached g1 ~ C s^{1/2-iλ}, g2 ~ ±s^{1/2+iλ}/(2iλC) with s the distance to
// the end (the sign is + on the left and - on the right, giving W = 1).
// Throws ZeroMomentum at μ = 0.
class PicardSeeds {
 public:
  PicardSeeds(const RadialProblem& rp, cplx mu, End end);
  SeedValue operator()(double x) const;

 private:
  double lambda_, A_;
  cplx mu_, c1_, c2_;
  End end_;
};

// Series form of the same seeds, entire in μ² (valid at μ = 0).
SeedValue entire_seed(const RadialProblem& rp, cplx mu, End end, double x);

struct PicardOptions {
  int k_max = 200;
  double tol = 1e-12;
  bool verify_quadrature = true;  // repeat on a refined panel set and compare
};

FssEvaluation picard_fss(const RadialProblem& rp, cplx mu, End end, const std::vector<double>& grid,
                         const PicardOptions& opt = {});

struct OdeOptions {
  double tol = 1e-12;    // target; the stepper runs at max(1e-3 tol, 1e-15)
  double x_start = 0.0;  // offset from the end; 0 chooses it from the seed error
};

FssEvaluation ode_fss(const RadialProblem& rp, cplx mu, End end, const std::vector<double>& grid,
                      const OdeOptions& opt = {});

// Start offset used by ode_fss: largest A·1e-3·2^{-j} where the first Picard
// correction to the seed is below tol.
double ode_start_offset(const RadialProblem& rp, double tol);

enum class Method { ode, picard };

struct ChannelFunctions {
  cplx mu;
  cplx mu_sq;
  cplx Delta;
  cplx delta_small;
  cplx M;
  cplx a1;  // W(S10, S21)
  bool at_regge_pole = false;
  double match_spread = 0.0;  // max relative deviation of Δ, δ over the three match points
  double x_match = 0.0;
};

struct ChannelOptions {
  Method method = Method::ode;
  double x_match = 0.0;  // 0 selects A/2; the other two points are x_match ± A/8
  double tol = 1e-12;
};

// Evaluated at the representative of ±μ with Re ≥ 0; values depend on μ² only.
// At a Regge pole M is NaN and at_regge_pole is set.
ChannelFunctions channel_functions(const RadialProblem& rp, cplx mu, const ChannelOptions& opt = {});

// Same, throwing AtReggePole instead of flagging.
ChannelFunctions channel_functions_strict(const RadialProblem& rp, cplx mu, const ChannelOptions& opt = {});

// Δ alone at A/2, without match-point checks (used by root searches).
cplx characteristic(const RadialProblem& rp, cplx mu, double tol = 1e-12);
cplx characteristic_small(const RadialProblem& rp, cplx mu, double tol = 1e-12);

}  // namespace ahls::radial
