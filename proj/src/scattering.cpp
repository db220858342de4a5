#include "ahls/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "ahls/parallel.hpp"
#include "ahls/specfun.hpp"

namespace ahls::scattering {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

struct Wronskians {
  cplx a0, b0, a1, b1;
};

Wronskians independent_wronskians(const radial::RadialProblem& rp, cplx mu, bool use_picard, double tol) {
  using namespace radial;
  const double A = rp.A();
  FssEvaluation L, R;
  if (use_picard) {
    const std::vector<double> grid = {0.375 * A};
    PicardOptions po;
    po.tol = std::max(tol, 1e-12);
    L = picard_fss(rp, mu, End::left, grid, po);
    R = picard_fss(rp, mu, End::right, grid, po);
  } else {
    const std::vector<double> grid = {0.625 * A};
    OdeOptions oo;
    oo.tol = tol;
    L = ode_fss(rp, mu, End::left, grid, oo);
    R = ode_fss(rp, mu, End::right, grid, oo);
  }
  Wronskians w;
  w.a0 = wronskian(R.S1[0], R.dS1[0], L.S2[0], L.dS2[0]);
  w.b0 = wronskian(L.S1[0], L.dS1[0], R.S1[0], R.dS1[0]);
  w.a1 = wronskian(L.S1[0], L.dS1[0], R.S2[0], R.dS2[0]);
  w.b1 = wronskian(R.S1[0], R.dS1[0], L.S1[0], L.dS1[0]);
  return w;
}

}  // namespace

cplx omega_ratio(double lambda) {
  if (lambda == 0.0) throw Error(Errc::zero_energy, "λ = 0");
  return specfun::complex_gamma(cplx(1.0, -lambda)) / specfun::complex_gamma(cplx(1.0, lambda));
}

cplx scattering_factor(double lambda) { return cplx(0.0, 2.0 * lambda) * omega_ratio(lambda); }

double ChannelScattering::unitarity_defect() const {
  if (!real_channel) return nan;
  return std::max({checks.t_plus_l, checks.t_plus_r, checks.cross, checks.s_unitary, checks.relation,
                   checks.delta_relation});
}

ChannelScattering channel_scattering(const radial::RadialProblem& rp, const angular::MomentumChannel& ch,
                                     const ScatteringOptions& opt) {
  ChannelScattering cs;
  cs.channel = ch;
  cs.real_channel = ch.mu_sq >= 0.0;
  radial::ChannelOptions co;
  co.tol = opt.tol;
  cs.funcs = radial::channel_functions_strict(rp, ch.mu, co);

  const double l = rp.lambda();
  const cplx k = scattering_factor(l);
  const cplx C10 = rp.C10(), C11 = rp.C11();
  const auto& f = cs.funcs;
  cs.T = k * C10 * C11 / f.Delta;
  cs.L = -k * C10 * C10 * f.M;
  cs.R = k * C11 * C11 * f.a1 / f.Delta;
  cs.S << cs.L, cs.T, cs.T, cs.R;

  auto& c = cs.checks;
  const double n10 = std::norm(C10), n11 = std::norm(C11);
  if (cs.real_channel) {
    const double t2 = std::norm(cs.T);
    c.t_plus_l = std::abs(t2 + std::norm(cs.L) - 1.0);
    c.t_plus_r = std::abs(t2 + std::norm(cs.R) - 1.0);
    c.cross = std::abs(cs.L * std::conj(cs.T) + cs.T * std::conj(cs.R));
    c.s_unitary = (cs.S.adjoint() * cs.S - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
    c.relation = std::abs(4.0 * l * l * n10 * (std::norm(f.M) * n10 + n11 / std::norm(f.Delta)) - 1.0);
    const double first = std::norm(f.Delta) / (4.0 * l * l * n10 * n11);
    c.delta_relation = std::abs(first - n10 / n11 * std::norm(f.delta_small) - 1.0) / std::max(1.0, first);
    const cplx R1 = k * n10 * C11 / std::conj(C11) * std::conj(f.Delta) / f.Delta * std::conj(f.M);
    c.r_conjugate = rel(cs.R, R1);
    c.r_modulus = std::abs(std::abs(cs.R) - 2.0 * std::abs(l) * n10 * std::abs(f.M));
  } else {
    c.t_plus_l = c.t_plus_r = c.cross = c.s_unitary = c.relation = c.delta_relation = nan;
    c.r_conjugate = c.r_modulus = nan;
  }
  c.delta_times_t = std::abs(f.Delta * cs.T - k * C10 * C11) / std::abs(k * C10 * C11);
  c.l_from_m = rel(cs.L, -k * C10 * C10 * f.M);

  if (opt.cross_check) {
    const bool picard = cs.real_channel && ch.mu != 0.0;
    const auto w = independent_wronskians(rp, f.mu, picard, opt.tol);
    const double scale = std::max({1.0, std::abs(cs.T), std::abs(cs.L), std::abs(cs.R)});
    const cplx TL = k * C10 * C11 / w.b1;
    const cplx TR = -k * C10 * C11 / w.b0;
    const cplx L = -k * C10 * C10 * w.a0 / w.b0;
    const cplx R = k * C11 * C11 * w.a1 / w.b1;
    c.cross_check = std::max({std::abs(TL - cs.T), std::abs(TR - cs.T), std::abs(L - cs.L), std::abs(R - cs.R)}) / scale;
  }
  return cs;
}

ScatteringOperator::ScatteringOperator(double lambda, cplx C10, cplx C11, std::vector<ChannelScattering> channels,
                                       std::shared_ptr<const angular::AngularSpectrum> spectrum)
    : lambda_(lambda), C10_(C10), C11_(C11), channels_(std::move(channels)), spectrum_(std::move(spectrum)) {}

std::vector<cplx> ScatteringOperator::delta_eigenvalues() const {
  std::vector<cplx> v;
  for (const auto& c : channels_) v.push_back(c.funcs.Delta);
  return v;
}

std::vector<cplx> ScatteringOperator::m_eigenvalues() const {
  std::vector<cplx> v;
  for (const auto& c : channels_) v.push_back(c.funcs.M);
  return v;
}

double ScatteringOperator::identity_defect() const {
  double d = 0.0;
  for (const auto& c : channels_) d = std::max({d, c.checks.delta_times_t, c.checks.l_from_m});
  return d;
}

ScatteringOperator assemble_operator(const radial::RadialProblem& rp, const angular::AngularSpectrum& s,
                                     const ScatteringOptions& opt) {
  if (s.lambda != rp.lambda()) throw Error(Errc::domain_error, "spectrum and radial problem use different λ");
  const auto moms = angular::momenta(s);
  std::vector<int> first;  // index of the first channel with each μ²
  std::map<double, int> seen;
  std::vector<int> owner(moms.size());
  for (size_t n = 0; n < moms.size(); ++n) {
    auto [it, fresh] = seen.emplace(moms[n].mu_sq, static_cast<int>(first.size()));
    if (fresh) first.push_back(static_cast<int>(n));
    owner[n] = it->second;
  }
  std::vector<ChannelScattering> solved(first.size());
  parallel_for(static_cast<int>(first.size()), [&](int i) { solved[i] = channel_scattering(rp, moms[first[i]], opt); });
  std::vector<ChannelScattering> channels;
  channels.reserve(moms.size());
  for (size_t n = 0; n < moms.size(); ++n) {
    channels.push_back(solved[owner[n]]);
    channels.back().channel = moms[n];
  }
  return ScatteringOperator(rp.lambda(), rp.C10(), rp.C11(), std::move(channels),
                            std::make_shared<const angular::AngularSpectrum>(s));
}

std::vector<double> unitarity_defect(const ScatteringOperator& op) {
  std::vector<double> d;
  for (const auto& c : op.channels()) d.push_back(c.real_channel ? c.checks.delta_relation : nan);
  return d;
}

MTail m_tail(const ScatteringOperator& op, int count, double noise) {
  MTail t;
  t.bound = 1.0 / (2.0 * std::abs(op.lambda()) * std::norm(op.C10()));
  const auto& cluster = op.spectrum().cluster;
  // one representative per eigenspace cluster
  std::vector<const ChannelScattering*> real;
  std::vector<int> total_before;  // real channels up to and including each representative's cluster
  int total = 0;
  for (const auto& c : op.channels()) {
    if (!c.real_channel) continue;
    ++total;
    if (std::abs(c.funcs.M) > t.bound * (1.0 + noise)) ++t.bound_violations;
    if (real.empty() || cluster[c.channel.n] != cluster[real.back()->channel.n]) {
      real.push_back(&c);
      total_before.push_back(total);
    } else {
      total_before.back() = total;
    }
  }
  size_t start = real.size();
  while (start > 0 && total - total_before[start - 1] < count) --start;
  t.channels = static_cast<int>(real.size() - start);
  const double floor = noise * t.bound;
  for (size_t i = start + 1; i < real.size(); ++i) {
    const double prev = std::abs(real[i - 1]->funcs.M), next = std::abs(real[i]->funcs.M);
    if (next - prev > floor) continue;
    if (prev - next > floor) {
      ++t.violations;
      continue;
    }
    // |M| is within the noise of the bound; by the unitarity relation it
    // increases exactly when |Δ| does
    ++t.ties;
    if (!(std::abs(real[i]->funcs.Delta) > std::abs(real[i - 1]->funcs.Delta))) ++t.violations;
  }
  if (!real.empty()) t.top_gap = 1.0 - std::abs(real.back()->funcs.M) / t.bound;
  return t;
}

}  // namespace ahls::scattering
