#pragma once

// Zeros of Δ and δ in the complex μ-plane, the leading large-μ model, the
// Hadamard product of Δ over its zeros, and boundedness scans.

#include <functional>
#include <vector>

#include "ahls/radial.hpp"

namespace ahls::analysis {

struct Rect {
  double re_lo, re_hi, im_lo, im_hi;
  cplx center() const { return {0.5 * (re_lo + re_hi), 0.5 * (im_lo + im_hi)}; }
  bool contains(cplx z) const {
    return z.real() >= re_lo && z.real() <= re_hi && z.imag() >= im_lo && z.imag() <= im_hi;
  }
};

// Argument principle on the boundary of r. The contour is refined until the
// phase of f changes by less than max_step between neighbouring points.
struct Winding {
  int winding = 0;
  double raw = 0.0;           // total phase change / 2π before rounding
  double min_modulus = 0.0;   // min |f| on the contour
  double max_modulus = 0.0;
  cplx first_moment = 0.0;    // (1/2πi)∮ z f'/f dz by the midpoint rule, roughly the sum of zeros inside
  int evaluations = 0;
};

// Throws NonConvergence when the contour runs into a zero of f.
Winding winding_number(const std::function<cplx(cplx)>& f, const Rect& r, double max_step = 0.4);

struct Pole {
  cplx alpha;          // zero of Δ(μ²) with Im ≥ 0
  double residual = 0.0;  // |Δ(α²)| / max |Δ| on the isolating box
  int winding = 1;
  Rect box;
};

struct ReggePoleSet {
  double lambda = 0.0, A = 0.0;
  std::vector<Pole> poles;        // zeros of Δ, by Im
  std::vector<Pole> small_zeros;  // zeros of δ, by Im
  int p_alpha = 0;                // ladder offset fitted from the poles
  int p_beta = 0;                 // and from the zeros of δ
  double swept_height = 0.0;
  int predicted = 0;              // ladder count below swept_height
  std::vector<Rect> off_ladder;   // boxes beside the ladder strip, over the same heights
  std::vector<int> off_ladder_winding;
};

struct PoleSearchOptions {
  bool small_zeros = true;   // also locate the zeros of δ
  bool off_ladder = true;    // certify the strips on both sides of the ladder
  double tol = 1e-12;
};

// Sweeps boxes [-λπ/(2A), 5λπ/(2A)] x [kh, (k+1)h] (h = strip_height, or π/A
// when 0) until count poles are certified. Throws PoleMissed when the total
// winding disagrees with the ladder count.
ReggePoleSet find_regge_poles(const radial::RadialProblem& rp, int count, double strip_height = 0.0,
                              const PoleSearchOptions& opt = {});

struct AsymptoticModel {
  double lambda = 1.0, A = 1.0;
  cplx C10 = 1.0, C11 = 1.0;
};
AsymptoticModel model_of(const radial::RadialProblem& rp);

enum class ModelQuantity { Delta, delta_small, M, dDelta };

// Leading term (remainder set to 1). sign = +1 is valid for -π/2 < arg μ ≤ π/2,
// sign = -1 for -π/2 ≤ arg μ < π/2; sign = 0 picks + for arg μ ≥ 0. dDelta is
// the derivative of the leading term of Δ with respect to μ. Throws
// SectorError for Re μ < 0, μ = 0, or a sign used outside its sector.
cplx asymptotic_model_eval(const AsymptoticModel& am, cplx mu, ModelQuantity which, int sign = 0);

// G ∏_{n<truncation} (1 - μ²/α_n²); with tail compensation the remaining
// factors use the ladder α̂_n = λπ/A + i(n+½+p)π/A, in closed form.
cplx hadamard_reconstruct(const ReggePoleSet& poles, cplx G, cplx mu_sq, int truncation, bool tail = false);

struct BoundsReport {
  std::vector<double> imag_grid, real_grid;
  std::vector<double> imag_delta, imag_delta_small;  // |Δ(-y²)|, |δ(-y²)|
  double imag_max_delta = 0.0, imag_max_delta_small = 0.0;
  double imag_growth = 0.0;  // least-squares slope of log max(|Δ|, |δ|) against y
  std::vector<double> real_delta, real_m;
  double mu_star = 0.0;              // λπ/A: beyond it the leading model of |Δ|² increases
  double last_decrease = 0.0;        // largest grid μ at which |Δ| did not increase (0 if none)
  int monotonicity_violations = 0;   // on the whole grid
  int tail_violations = 0;           // at grid points ≥ mu_star
  double lower_margin = 0.0;        // min |Δ| - 2|λ||C10 C11|
  double m_bound_margin = 0.0;      // min 1/(2|λ||C10|²) - |M|
};
BoundsReport bounds_report(const radial::RadialProblem& rp, const std::vector<double>& real_grid,
                           const std::vector<double>& imag_grid);

}  // namespace ahls::analysis
