#include "ahls/radial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/numeric/odeint.hpp>

#include "ahls/specfun.hpp"

namespace ahls::radial {

namespace {

using specfun::BesselOrder;
using specfun::Branch;

constexpr cplx I1(0.0, 1.0);
constexpr int n_nodes = 16;

// Even reflection into Re μ ≥ 0 (and Im μ ≥ 0 on the imaginary axis).
cplx representative(cplx mu) {
  if (mu.real() < 0.0 || (mu.real() == 0.0 && mu.imag() < 0.0)) return -mu;
  return mu;
}

double end_coordinate(End e, double A, double x) { return e == End::left ? x : A - x; }

// Full potential in the end coordinate s, with the -κ/s² part formed last.
cplx q_full(const RadialProblem& rp, End e, double s) {
  return rp.potential().q_end(e == End::left ? 0 : 1, s) - rp.kappa() / (s * s);
}

cplx q_regular(const RadialProblem& rp, End e, double s) {
  return rp.potential().q_end(e == End::left ? 0 : 1, s);
}

// s^α Σ_k (μ²s²/4)^k / (k! (1+β)_k) with α = 1/2 + β, and its s-derivative.
std::pair<cplx, cplx> entire_series(cplx beta, cplx mu, double s) {
  const cplx alpha = 0.5 + beta;
  const cplx z = mu * mu * s * s / 4.0;
  cplx term = 1.0, sum = 1.0, dsum = alpha;
  for (int k = 1; k < 400; ++k) {
    term *= z / (double(k) * (double(k) + beta));
    sum += term;
    dsum += term * (2.0 * k + alpha);
    if (std::abs(term) <= 1e-17 * std::abs(sum) && std::abs(term) * (2.0 * k + std::abs(alpha)) <= 1e-17 * std::abs(dsum)) {
      break;
    }
  }
  const cplx p = std::exp(alpha * std::log(s));
  return {p * sum, p * dsum / s};
}

struct Panels {
  std::vector<double> a, b;
};

Panels make_panels(double s_max, cplx mu, double A, std::vector<double> breaks, int level) {
  const double ratio = std::pow(2.0, 1.0 / (1 << level));
  const double h_u = std::min(0.025 * A, 2.0 / std::max(std::abs(mu), 1e-300)) / (1 << level);
  std::vector<double> pts = {0.0};
  double s = 1e-12 * A;
  while (s < h_u && s < s_max) {
    pts.push_back(s);
    s *= ratio;
  }
  double last = pts.back();
  while (last + h_u < s_max) {
    last += h_u;
    pts.push_back(last);
  }
  pts.push_back(s_max);
  for (double x : breaks) pts.push_back(x);
  std::sort(pts.begin(), pts.end());
  Panels p;
  for (size_t i = 1; i < pts.size(); ++i) {
    if (pts[i] - pts[i - 1] <= 1e-15 * std::max(1.0, pts[i])) continue;
    p.a.push_back(p.b.empty() ? 0.0 : p.b.back());
    p.b.push_back(pts[i]);
  }
  return p;
}

struct GaussRule {
  std::array<double, n_nodes> tau{}, w{};
  // S[i][j] = ∫_{-1}^{τ_i} ℓ_j, row n_nodes is the full interval
  std::array<std::array<double, n_nodes>, n_nodes + 1> S{};

  GaussRule() {
    using G = boost::math::quadrature::gauss<double, n_nodes>;
    const auto& ab = G::abscissa();
    const auto& wt = G::weights();
    for (int i = 0; i < n_nodes / 2; ++i) {
      tau[n_nodes / 2 + i] = ab[i];
      w[n_nodes / 2 + i] = wt[i];
      tau[n_nodes / 2 - 1 - i] = -ab[i];
      w[n_nodes / 2 - 1 - i] = wt[i];
    }
    auto legendre = [](double x, int nmax) {
      std::vector<double> P(nmax + 2);
      P[0] = 1.0;
      P[1] = x;
      for (int n = 1; n <= nmax; ++n) P[n + 1] = ((2.0 * n + 1) * x * P[n] - n * P[n - 1]) / (n + 1);
      return P;
    };
    for (int i = 0; i <= n_nodes; ++i) {
      const double t = i < n_nodes ? tau[i] : 1.0;
      const auto Pt = legendre(t, n_nodes);
      // ∫_{-1}^{t} P_n
      std::vector<double> IP(n_nodes);
      IP[0] = t + 1.0;
      for (int n = 1; n < n_nodes; ++n) IP[n] = (Pt[n + 1] - Pt[n - 1]) / (2.0 * n + 1);
      for (int j = 0; j < n_nodes; ++j) {
        const auto Pj = legendre(tau[j], n_nodes);
        double v = 0.0;
        for (int n = 0; n < n_nodes; ++n) v += (2.0 * n + 1) / 2.0 * Pj[n] * IP[n];
        S[i][j] = w[j] * v;
      }
    }
  }
};

const GaussRule& gauss_rule() {
  static const GaussRule r;
  return r;
}

struct PicardRun {
  std::vector<cplx> S1, dS1, S2, dS2;  // at the grid, s-derivatives, unscaled
  int terms = 0;
  std::vector<double> term_norms;
};

// One Picard solve in the end coordinate on a given panel set.
PicardRun picard_run(const RadialProblem& rp, cplx mu, End e, const std::vector<double>& s_grid,
                     const Panels& panels, const PicardOptions& opt) {
  const auto& G = gauss_rule();
  const int np = static_cast<int>(panels.a.size());
  const int per = n_nodes + 1;  // nodes then the right endpoint
  const int total = np * per;
  const BesselOrder order(rp.lambda());
  std::vector<double> s(total);
  std::vector<cplx> It(total), Kt(total), DI(total), DK(total), qv(total);
  for (int p = 0; p < np; ++p) {
    const double a = panels.a[p], h = panels.b[p] - panels.a[p];
    for (int i = 0; i < per; ++i) {
      const double t = i < n_nodes ? a + 0.5 * (G.tau[i] + 1.0) * h : panels.b[p];
      const int k = p * per + i;
      s[k] = t;
      const cplx z = mu * t;
      const auto iv = specfun::bessel_i_eval(order, Branch::plus, z, true);
      const auto kv = specfun::bessel_k_eval(order, z, true);
      const double rt = std::sqrt(t);
      It[k] = rt * iv.value;
      Kt[k] = rt * kv.value;
      DI[k] = iv.value / (2.0 * rt) + rt * mu * iv.derivative;
      DK[k] = kv.value / (2.0 * rt) + rt * mu * kv.derivative;
      qv[k] = q_regular(rp, e, t);
    }
  }
  // grid points are panel endpoints
  std::vector<int> grid_index;
  for (double sg : s_grid) {
    int best = -1;
    for (int p = 0; p < np; ++p) {
      if (std::abs(panels.b[p] - sg) <= 1e-14 * std::max(1.0, sg)) best = p * per + n_nodes;
    }
    if (best < 0) throw Error(Errc::quadrature_failure, "grid point is not a panel endpoint");
    grid_index.push_back(best);
  }

  const PicardSeeds seeds(rp, mu, e);
  // scaled seeds ĝ = e^{-μs} g and scaled derivatives
  std::array<std::vector<cplx>, 2> term, dterm, sum, dsum;
  for (int j = 0; j < 2; ++j) {
    term[j].resize(total);
    dterm[j].resize(total);
  }
  for (int k = 0; k < total; ++k) {
    const double x = e == End::left ? s[k] : rp.A() - s[k];
    const auto g = seeds(x);
    const cplx sc = std::exp(-mu * s[k]);
    const double sign = e == End::left ? 1.0 : -1.0;  // d/ds = sign · d/dx
    // right end: S21 = -f2, so f2 = -g2
    term[0][k] = sc * g.g1;
    dterm[0][k] = sc * sign * g.dg1;
    term[1][k] = sc * (e == End::left ? g.g2 : -g.g2);
    dterm[1][k] = sc * sign * (e == End::left ? g.dg2 : -g.dg2);
  }
  sum = term;
  dsum = dterm;

  PicardRun out;
  auto sup = [&](const std::vector<cplx>& v) {
    double m = 0.0;
    for (const auto& c : v) m = std::max(m, std::abs(c));
    return m;
  };
  bool converged = false;
  for (int it = 1; it <= opt.k_max; ++it) {
    double ratio = 0.0;
    for (int j = 0; j < 2; ++j) {
      std::vector<cplx> next(total), dnext(total);
      cplx Phi = 0.0, Psi = 0.0;
      for (int p = 0; p < np; ++p) {
        const int base = p * per;
        const double a = panels.a[p], h = panels.b[p] - a;
        std::array<cplx, n_nodes> f1, f2;
        for (int i = 0; i < n_nodes; ++i) {
          const int k = base + i;
          f1[i] = Kt[k] * qv[k] * term[j][k];
          f2[i] = It[k] * qv[k] * term[j][k];
        }
        for (int i = 0; i < per; ++i) {
          const int k = base + i;
          const double x = s[k];
          cplx phi = 0.0, psi = 0.0;
          for (int m = 0; m < n_nodes; ++m) {
            phi += G.S[i][m] * f1[m];
            psi += G.S[i][m] * std::exp(-2.0 * mu * (x - s[base + m])) * f2[m];
          }
          phi = Phi + 0.5 * h * phi;
          psi = std::exp(-2.0 * mu * (x - a)) * Psi + 0.5 * h * psi;
          next[k] = It[k] * phi - Kt[k] * psi;
          dnext[k] = DI[k] * phi - DK[k] * psi;
          if (i == n_nodes) {
            Phi = phi;
            Psi = psi;
          }
        }
      }
      for (int k = 0; k < total; ++k) {
        sum[j][k] += next[k];
        dsum[j][k] += dnext[k];
      }
      const double tn = sup(next);
      if (j == 0) out.term_norms.push_back(tn);
      ratio = std::max(ratio, tn / sup(sum[j]));
      term[j] = std::move(next);
      dterm[j] = std::move(dnext);
    }
    out.terms = it;
    if (ratio < opt.tol) {
      converged = true;
      break;
    }
  }
  if (!converged) throw Error(Errc::no_convergence, "Picard series did not converge in k_max terms");
  for (int k : grid_index) {
    const cplx sc = std::exp(mu * s[k]);
    out.S1.push_back(sc * sum[0][k]);
    out.dS1.push_back(sc * dsum[0][k]);
    out.S2.push_back(sc * sum[1][k]);
    out.dS2.push_back(sc * dsum[1][k]);
  }
  return out;
}

// s-coordinate values to physical ones.
void to_physical(End e, FssEvaluation& f, std::vector<cplx> S1, std::vector<cplx> dS1, std::vector<cplx> S2,
                 std::vector<cplx> dS2) {
  const double sign = e == End::left ? 1.0 : -1.0;
  for (auto& v : dS1) v *= sign;
  for (auto& v : dS2) v *= sign;
  if (e == End::right) {
    for (auto& v : S2) v = -v;
    for (auto& v : dS2) v = -v;
  }
  f.S1 = std::move(S1);
  f.dS1 = std::move(dS1);
  f.S2 = std::move(S2);
  f.dS2 = std::move(dS2);
}

void check_grid(const RadialProblem& rp, const std::vector<double>& grid) {
  if (grid.empty()) throw Error(Errc::domain_error, "empty grid");
  for (double x : grid) {
    if (!(x > 0.0 && x < rp.A())) throw Error(Errc::domain_error, "grid points must lie in (0, A)");
  }
}

}  // namespace

RadialProblem::RadialProblem(metric::RadialPotential potential, cplx C10, cplx C11)
    : pot_(std::move(potential)), C10_(C10), C11_(C11) {
  if (C10 == 0.0 || C11 == 0.0) throw Error(Errc::domain_error, "C10 and C11 must be nonzero");
  if (pot_.metric().c0() != 1.0 || pot_.metric().c1() != 1.0) {
    throw Error(Errc::domain_error, "radial problem needs two hyperbolic ends with unit coefficient");
  }
}

RadialProblem make_problem(const metric::LiouvilleMetric& m, double lambda, cplx C10, cplx C11) {
  return RadialProblem(metric::radial_potential(m, lambda), C10, C11);
}

cplx wronskian(cplx f, cplx df, cplx g, cplx dg) { return f * dg - df * g; }

cplx green_kernel(double x, double t, cplx mu, double lambda) {
  if (t > x) throw Error(Errc::domain_error, "green_kernel needs t ≤ x");
  if (!(t > 0.0)) throw Error(Errc::domain_error, "green_kernel needs t > 0");
  if (mu == 0.0) throw Error(Errc::zero_momentum, "green_kernel at μ = 0");
  if (t == x) return 0.0;
  mu = representative(mu);
  const BesselOrder order(lambda);
  const cplx ix = specfun::bessel_i(order, Branch::plus, mu * x);
  const cplx it = specfun::bessel_i(order, Branch::plus, mu * t);
  const cplx kx = specfun::bessel_k(order, mu * x);
  const cplx kt = specfun::bessel_k(order, mu * t);
  return std::sqrt(x * t) * (ix * kt - it * kx);
}

PicardSeeds::PicardSeeds(const RadialProblem& rp, cplx mu, End end)
    : lambda_(rp.lambda()), A_(rp.A()), mu_(representative(mu)), end_(end) {
  if (mu == 0.0) throw Error(Errc::zero_momentum, "Bessel-form seeds are not defined at μ = 0");
  const double l = lambda_;
  const cplx C = rp.C(end);
  const cplx lg = std::log(mu_ / 2.0);
  c1_ = C * specfun::complex_gamma(cplx(1.0, -l)) * std::exp(I1 * l * lg);
  c2_ = specfun::complex_gamma(cplx(1.0, l)) * std::exp(-I1 * l * lg) / (2.0 * I1 * l * C);
}

SeedValue PicardSeeds::operator()(double x) const {
  const double s = end_ == End::left ? x : A_ - x;
  const BesselOrder order(lambda_);
  const cplx z = mu_ * s;
  const auto im = specfun::bessel_i_eval(order, Branch::minus, z, false);
  const auto ip = specfun::bessel_i_eval(order, Branch::plus, z, false);
  const double rt = std::sqrt(s);
  const cplx f1 = c1_ * rt * im.value, df1 = c1_ * (im.value / (2.0 * rt) + rt * mu_ * im.derivative);
  const cplx f2 = c2_ * rt * ip.value, df2 = c2_ * (ip.value / (2.0 * rt) + rt * mu_ * ip.derivative);
  if (end_ == End::left) return {f1, df1, f2, df2};
  // d/dx = -d/ds; the second solution carries a sign so that W = 1
  return {f1, -df1, -f2, df2};
}

SeedValue entire_seed(const RadialProblem& rp, cplx mu, End end, double x) {
  const double l = rp.lambda();
  const cplx C = rp.C(end);
  const double s = end == End::left ? x : rp.A() - x;
  const auto [h1, dh1] = entire_series(cplx(0.0, -l), mu, s);
  const auto [h2, dh2] = entire_series(cplx(0.0, l), mu, s);
  const cplx c2 = 1.0 / (2.0 * I1 * l * C);
  if (end == End::left) return {C * h1, C * dh1, c2 * h2, c2 * dh2};
  return {C * h1, -C * dh1, -c2 * h2, c2 * dh2};
}

FssEvaluation picard_fss(const RadialProblem& rp, cplx mu, End end, const std::vector<double>& grid,
                         const PicardOptions& opt) {
  check_grid(rp, grid);
  if (opt.tol < 1e-12) throw Error(Errc::domain_error, "Picard tolerance must be at least 1e-12");
  const cplx m = representative(mu);
  std::vector<double> s_grid;
  for (double x : grid) s_grid.push_back(end_coordinate(end, rp.A(), x));
  const double s_max = *std::max_element(s_grid.begin(), s_grid.end());

  auto run = picard_run(rp, m, end, s_grid, make_panels(s_max, m, rp.A(), s_grid, 0), opt);
  if (opt.verify_quadrature) {
    const auto fine = picard_run(rp, m, end, s_grid, make_panels(s_max, m, rp.A(), s_grid, 1), opt);
    double change = 0.0;
    for (size_t i = 0; i < s_grid.size(); ++i) {
      change = std::max(change, std::abs(fine.S1[i] - run.S1[i]) / std::abs(fine.S1[i]));
      change = std::max(change, std::abs(fine.S2[i] - run.S2[i]) / std::abs(fine.S2[i]));
    }
    if (change > std::max(100.0 * opt.tol, 1e-10)) {
      throw Error(Errc::quadrature_failure, "Volterra integrals changed by " + std::to_string(change) +
                                                " under panel refinement");
    }
    run = fine;
  }
  FssEvaluation f;
  f.mu = m;
  f.end = end;
  f.grid = grid;
  f.terms = run.terms;
  f.term_norms = run.term_norms;
  to_physical(end, f, run.S1, run.dS1, run.S2, run.dS2);
  return f;
}

double ode_start_offset(const RadialProblem& rp, double tol) {
  const double A = rp.A();
  const double l = std::abs(rp.lambda());
  double x = 1e-3 * A;
  for (int j = 0; j < 60; ++j, x *= 0.5) {
    double q = 0.0;
    for (double t : {x, 0.5 * x, 0.25 * x}) {
      q = std::max({q, std::abs(q_regular(rp, End::left, t)), std::abs(q_regular(rp, End::right, t))});
    }
    if (q * x * x / (2.0 * l) < tol) return x;
  }
  throw Error(Errc::stiffness_failure, "no start offset meets the seed tolerance");
}

FssEvaluation ode_fss(const RadialProblem& rp, cplx mu, End end, const std::vector<double>& grid,
                      const OdeOptions& opt) {
  check_grid(rp, grid);
  using state = std::array<cplx, 4>;
  namespace ode = boost::numeric::odeint;
  const cplx m = representative(mu);
  const cplx mu2 = m * m;
  // local errors accumulate over many steps; run three digits below the target
  const double step_tol = std::max(1e-3 * opt.tol, 1e-15);
  const double s0 = opt.x_start > 0.0 ? opt.x_start : ode_start_offset(rp, step_tol);

  std::vector<std::pair<double, int>> order;
  for (int i = 0; i < static_cast<int>(grid.size()); ++i) {
    const double s = end_coordinate(end, rp.A(), grid[i]);
    if (s <= s0) throw Error(Errc::domain_error, "grid point inside the seed region");
    order.emplace_back(s, i);
  }
  std::sort(order.begin(), order.end());

  // seeds in the s-coordinate: f1 = C h_-, f2 = h_+/(2iλC)
  const double l = rp.lambda();
  const cplx C = rp.C(end);
  const auto [h1, dh1] = entire_series(cplx(0.0, -l), m, s0);
  const auto [h2, dh2] = entire_series(cplx(0.0, l), m, s0);
  const cplx c2 = 1.0 / (2.0 * I1 * l * C);
  state y = {C * h1, C * dh1, c2 * h2, c2 * dh2};

  auto sys = [&](const state& u, state& du, double s) {
    const cplx k = q_full(rp, end, s) + mu2;
    du[0] = u[1];
    du[1] = k * u[0];
    du[2] = u[3];
    du[3] = k * u[2];
  };
  auto stepper = ode::make_controlled<ode::runge_kutta_fehlberg78<state>>(1e-300, step_tol);
  std::vector<double> times = {s0};
  for (const auto& o : order) times.push_back(o.first);
  std::vector<state> at(grid.size());
  size_t seen = 0;
  try {
    ode::integrate_times(stepper, sys, y, times.begin(), times.end(), 0.1 * s0,
                         [&](const state& u, double) {
                           if (seen > 0) at[order[seen - 1].second] = u;
                           ++seen;
                         },
                         ode::max_step_checker(1000000));
  } catch (const ode::step_adjustment_error& ex) {
    throw Error(Errc::stiffness_failure, std::string("step size underflow: ") + ex.what());
  } catch (const ode::no_progress_error& ex) {
    throw Error(Errc::stiffness_failure, std::string("no progress: ") + ex.what());
  }
  std::vector<cplx> S1, dS1, S2, dS2;
  for (const auto& u : at) {
    S1.push_back(u[0]);
    dS1.push_back(u[1]);
    S2.push_back(u[2]);
    dS2.push_back(u[3]);
  }
  FssEvaluation f;
  f.mu = m;
  f.end = end;
  f.grid = grid;
  f.x_start = s0;
  to_physical(end, f, S1, dS1, S2, dS2);
  return f;
}

namespace {

std::pair<FssEvaluation, FssEvaluation> both_ends(const RadialProblem& rp, cplx mu, const std::vector<double>& grid,
                                                  Method method, double tol) {
  if (method == Method::picard && mu != 0.0) {
    PicardOptions po;
    po.tol = std::max(tol, 1e-12);
    return {picard_fss(rp, mu, End::left, grid, po), picard_fss(rp, mu, End::right, grid, po)};
  }
  OdeOptions oo;
  oo.tol = tol;
  return {ode_fss(rp, mu, End::left, grid, oo), ode_fss(rp, mu, End::right, grid, oo)};
}

}  // namespace

ChannelFunctions channel_functions(const RadialProblem& rp, cplx mu, const ChannelOptions& opt) {
  const double A = rp.A();
  const double xm = opt.x_match > 0.0 ? opt.x_match : 0.5 * A;
  const std::vector<double> grid = {xm, xm - 0.125 * A, xm + 0.125 * A};
  const cplx m = representative(mu);
  const auto [L, R] = both_ends(rp, m, grid, opt.method, opt.tol);

  ChannelFunctions cf;
  cf.mu = m;
  cf.mu_sq = m * m;
  cf.x_match = xm;
  std::array<cplx, 3> D, d;
  for (int i = 0; i < 3; ++i) {
    D[i] = wronskian(R.S1[i], R.dS1[i], L.S1[i], L.dS1[i]);
    d[i] = wronskian(R.S1[i], R.dS1[i], L.S2[i], L.dS2[i]);
  }
  cf.Delta = D[0];
  cf.delta_small = d[0];
  cf.a1 = wronskian(L.S1[0], L.dS1[0], R.S2[0], R.dS2[0]);
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      cf.match_spread = std::max(cf.match_spread, std::abs(D[i] - D[j]) / std::abs(D[0]));
      if (d[0] != 0.0) cf.match_spread = std::max(cf.match_spread, std::abs(d[i] - d[j]) / std::abs(d[0]));
    }
  }
  const double scale = std::abs(R.S1[0] * L.dS1[0]) + std::abs(R.dS1[0] * L.S1[0]);
  if (std::abs(cf.Delta) < 1e-12 * scale) {
    cf.at_regge_pole = true;
    cf.M = cplx(std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN());
  } else {
    cf.M = -cf.delta_small / cf.Delta;
  }
  return cf;
}

ChannelFunctions channel_functions_strict(const RadialProblem& rp, cplx mu, const ChannelOptions& opt) {
  auto cf = channel_functions(rp, mu, opt);
  if (cf.at_regge_pole) throw Error(Errc::at_regge_pole, "Δ vanishes to working precision");
  return cf;
}

cplx characteristic(const RadialProblem& rp, cplx mu, double tol) {
  const std::vector<double> grid = {0.5 * rp.A()};
  const auto [L, R] = both_ends(rp, representative(mu), grid, Method::ode, tol);
  return wronskian(R.S1[0], R.dS1[0], L.S1[0], L.dS1[0]);
}

cplx characteristic_small(const RadialProblem& rp, cplx mu, double tol) {
  const std::vector<double> grid = {0.5 * rp.A()};
  const auto [L, R] = both_ends(rp, representative(mu), grid, Method::ode, tol);
  return wronskian(R.S1[0], R.dS1[0], L.S2[0], L.dS2[0]);
}

}  // namespace ahls::radial
