#include "ahls/metric.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/interpolators/cardinal_quintic_b_spline.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace ahls::metric {

namespace {

constexpr double pi = std::numbers::pi;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Stirling numbers of the second kind: (x d/dx)^n = Σ_k S(n,k) x^k d^k/dx^k
constexpr double stirling2[5][5] = {
    {1, 0, 0, 0, 0},
    {0, 1, 0, 0, 0},
    {0, 1, 1, 0, 0},
    {0, 1, 3, 1, 0},
    {0, 1, 7, 6, 1},
};

double param(const MetricConfig& c, const std::string& key, double fallback) {
  const auto it = c.params.find(key);
  return it == c.params.end() ? fallback : it->second;
}

std::vector<double> radial_nodes(double A, int n, double span) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) {
    const double u = -span + 2.0 * span * i / (n - 1);
    x[i] = A / (1.0 + std::exp(-u));
  }
  return x;
}

// b(y) = b_shift + beta sin(2πy/P) + beta2 cos(4πy/P) + beta_c cos(2πy/P)
Expr trig_b(const MetricConfig& c) {
  const double P = param(c, "b_period", c.B);
  const Expr y = Expr::var();
  const double w = 2.0 * pi / P;
  Expr b = Expr::constant(param(c, "b_shift", 0.0));
  if (const double v = param(c, "beta", 0.0); v != 0.0) b = b + v * sin(w * y);
  if (const double v = param(c, "beta2", 0.0); v != 0.0) b = b + v * cos(2.0 * w * y);
  if (const double v = param(c, "beta_c", 0.0); v != 0.0) b = b + v * cos(w * y);
  return b;
}

// Trigonometric interpolant through uniform periodic samples.
Expr trig_interpolant(const std::vector<double>& samples, double B) {
  const int n = static_cast<int>(samples.size());
  const Expr y = Expr::var();
  std::vector<std::complex<double>> c(n / 2 + 1);
  double cmax = 0.0;
  for (int k = 0; k <= n / 2; ++k) {
    std::complex<double> s = 0.0;
    for (int j = 0; j < n; ++j) s += samples[j] * std::polar(1.0, -2.0 * pi * j * k / n);
    c[k] = s / double(n);
    cmax = std::max(cmax, std::abs(c[k]));
  }
  Expr b = Expr::constant(c[0].real());
  for (int k = 1; k <= n / 2; ++k) {
    if (std::abs(c[k]) < 1e-15 * cmax) continue;
    const double w = 2.0 * pi * k / B;
    const bool nyquist = (n % 2 == 0 && k == n / 2);
    const double f = nyquist ? 1.0 : 2.0;
    b = b + f * c[k].real() * cos(w * y);
    if (!nyquist) b = b - f * c[k].imag() * sin(w * y);
  }
  return b;
}

const std::set<std::string> analytic_keys = {
    "bump_height", "bump_center", "bump_width", "beta", "beta2", "beta_c", "b_period",
    "a_shift",     "b_shift",     "c0",         "c1",   "spike_amp", "spike_power"};

}  // namespace

ScalarFunction::ScalarFunction() = default;

ScalarFunction::ScalarFunction(const Expr& e) {
  d_[0] = e;
  for (int k = 1; k <= max_derivative; ++k) d_[k] = d_[k - 1].derivative();
}

ScalarFunction ScalarFunction::spline(std::vector<double> samples, double x0, double step, int order) {
  if (samples.size() < 8) throw Error(Errc::config_error, "spline needs at least 8 samples");
  ScalarFunction f;
  const double x1 = x0 + step * (samples.size() - 1);
  if (order == 3) {
    auto sp = std::make_shared<boost::math::interpolators::cardinal_cubic_b_spline<double>>(
        samples.begin(), samples.end(), x0, step);
    f.spline_ = [sp, x0, x1](double x) { return (*sp)(std::clamp(x, x0, x1)); };
  } else if (order == 5) {
    auto sp = std::make_shared<boost::math::interpolators::cardinal_quintic_b_spline<double>>(
        samples, x0, step);
    f.spline_ = [sp, x0, x1](double x) { return (*sp)(std::clamp(x, x0, x1)); };
  } else {
    throw Error(Errc::config_error, "spline order must be 3 or 5");
  }
  f.scale_ = x1 - x0;
  return f;
}

double ScalarFunction::derivative(double x, int k) const {
  if (k < 0 || k > max_derivative) throw Error(Errc::domain_error, "derivative order out of range");
  if (!spline_) return d_[k](x);
  const auto& f = spline_;
  if (k == 0) return f(x) + offset_;
  // step per order balances truncation against rounding
  const double h = scale_ * std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (k + 2));
  switch (k) {
    case 1: return (f(x + h) - f(x - h)) / (2.0 * h);
    case 2: return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
    case 3: return (f(x + 2 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2 * h)) / (2.0 * h * h * h);
    default:
      return (f(x + 2 * h) - 4.0 * f(x + h) + 6.0 * f(x) - 4.0 * f(x - h) + f(x - 2 * h)) /
             (h * h * h * h);
  }
}

ScalarFunction ScalarFunction::plus(double c) const {
  if (symbolic()) return ScalarFunction(d_[0] + c);
  ScalarFunction g = *this;
  g.offset_ += c;
  return g;
}

LiouvilleMetric::LiouvilleMetric(double A, double B, double c0, double c1, ScalarFunction a_reg,
                                 ScalarFunction b, double eps0, double eps1, double delta)
    : A_(A), B_(B), c0_(c0), c1_(c1), a_reg_(std::move(a_reg)), b_(std::move(b)), eps0_(eps0),
      eps1_(eps1), delta_(delta > 0.0 ? delta : 0.25 * A) {
  if (!(A > 0.0) || !(B > 0.0)) throw Error(Errc::domain_error, "A and B must be positive");
  if (!(eps0 > 0.0) || !(eps1 > 0.0)) throw Error(Errc::domain_error, "decay exponents must be positive");
}

double LiouvilleMetric::a(double x) const {
  const double s = A_ - x;
  return c0_ / (x * x) + c1_ / (s * s) + a_reg_(x);
}

double LiouvilleMetric::end_regular(int end, double s, int k) const {
  const double t = A_ - s;
  const double other = end == 0 ? c1_ : c0_;
  const double sing = other * factorial(k + 1) / std::pow(t, k + 2);
  if (end == 0) return sing + a_reg_.derivative(s, k);
  return sing + ((k % 2) ? -1.0 : 1.0) * a_reg_.derivative(t, k);
}

LiouvilleMetric LiouvilleMetric::gauge_shifted(double C) const {
  LiouvilleMetric m = *this;
  m.a_reg_ = a_reg_.plus(C);
  m.b_ = b_.plus(C);
  m.params["gauge_shift"] += C;
  return m;
}

LiouvilleMetric LiouvilleMetric::a_shifted(double C) const {
  LiouvilleMetric m = *this;
  m.a_reg_ = a_reg_.plus(C);
  m.params["a_shift"] += C;
  return m;
}

LiouvilleMetric LiouvilleMetric::b_shifted(double C) const {
  LiouvilleMetric m = *this;
  m.b_ = b_.plus(C);
  m.params["b_shift"] += C;
  return m;
}

void check_positivity(const LiouvilleMetric& m, const Grid& grid) {
  const auto xs = radial_nodes(m.A(), grid.n_radial, grid.span);
  double amin = std::numeric_limits<double>::infinity(), xmin = 0.0;
  for (double x : xs) {
    const double v = m.a(x);
    if (v < amin) {
      amin = v;
      xmin = x;
    }
  }
  double bmax = -std::numeric_limits<double>::infinity(), ymax = 0.0;
  for (int j = 0; j < grid.n_angular; ++j) {
    const double y = m.B() * j / grid.n_angular;
    const double v = m.b(y);
    if (v > bmax) {
      bmax = v;
      ymax = y;
    }
  }
  if (!(amin - bmax > 0.0)) {
    std::ostringstream os;
    os.precision(6);
    os << "a(x) - b(y) = " << amin - bmax << " at (x, y) = (" << xmin << ", " << ymax << ")";
    throw Error(Errc::positivity_violation, os.str());
  }
}

ValidationReport validate_ahls(const LiouvilleMetric& m, const Grid& grid, int max_order,
                               int periodic_order) {
  if (max_order < 0 || max_order > ScalarFunction::max_derivative) {
    throw Error(Errc::domain_error, "max_order must lie in [0, 4]");
  }
  ValidationReport rep;
  rep.max_order = max_order;
  const double A = m.A(), B = m.B();

  // (i) positivity, separable so min a - max b
  {
    const auto xs = radial_nodes(A, grid.n_radial, grid.span);
    double amin = std::numeric_limits<double>::infinity();
    for (double x : xs) {
      if (m.a(x) < amin) {
        amin = m.a(x);
        rep.min_x = x;
      }
    }
    double bmax = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < grid.n_angular; ++j) {
      const double y = B * j / grid.n_angular;
      if (m.b(y) > bmax) {
        bmax = m.b(y);
        rep.min_y = y;
      }
    }
    rep.min_a_minus_b = amin - bmax;
    rep.positivity_ok = rep.min_a_minus_b > 0.0;
  }

  // (ii) periodicity of b and its derivatives
  {
    const int top = std::min(periodic_order, ScalarFunction::max_derivative);
    for (int k = 0; k <= top; ++k) {
      double scale = 0.0;
      for (int j = 0; j < grid.n_angular; ++j) {
        scale = std::max(scale, std::abs(m.b_derivative(B * j / grid.n_angular, k)));
      }
      const double defect = std::abs(m.b_derivative(B, k) - m.b_derivative(0.0, k));
      if (defect > 1e-8 * (1.0 + scale)) {
        rep.periodicity_ok = false;
        rep.periodicity_fail_order = k;
        rep.periodicity_defect = defect;
        break;
      }
    }
  }

  // (iii) decay toward both ends. With s the distance to the end and
  // a = c/s^2 + H(s):
  //   s^2 (a - b) - 1 = (c - 1) + s^2 H(s) - s^2 b(y)
  // (s d/ds)^n acts on s^2 H through Stirling numbers, and on s^2 b as 2^n.
  std::vector<double> bmin(max_order + 1), bmax(max_order + 1), babs(max_order + 1);
  for (int al = 0; al <= max_order; ++al) {
    bmin[al] = std::numeric_limits<double>::infinity();
    bmax[al] = -bmin[al];
    babs[al] = 0.0;
    for (int j = 0; j < grid.n_angular; ++j) {
      const double v = m.b_derivative(B * j / grid.n_angular, al);
      bmin[al] = std::min(bmin[al], v);
      bmax[al] = std::max(bmax[al], v);
      babs[al] = std::max(babs[al], std::abs(v));
    }
  }
  auto lhs = [&](int end, int alpha, int n, double s) {
    const double cend = end == 0 ? m.c0() : m.c1();
    const double s2 = s * s;
    if (alpha > 0) return std::ldexp(s2, n) * babs[alpha];
    double theta = (n == 0) ? cend - 1.0 : 0.0;
    for (int k = 0; k <= n; ++k) {
      if (stirling2[n][k] == 0.0) continue;
      // (s^2 H)^{(k)} = s^2 H^{(k)} + 2k s H^{(k-1)} + k(k-1) H^{(k-2)}
      double d = s2 * m.end_regular(end, s, k);
      if (k >= 1) d += 2.0 * k * s * m.end_regular(end, s, k - 1);
      if (k >= 2) d += k * (k - 1.0) * m.end_regular(end, s, k - 2);
      theta += stirling2[n][k] * std::pow(s, k) * d;
    }
    const double w = std::ldexp(s2, n);
    return std::max(std::abs(theta - w * bmin[0]), std::abs(theta - w * bmax[0]));
  };

  const double s_max = A - m.delta();
  for (int end = 0; end < 2; ++end) {
    const double eps = end == 0 ? m.eps0() : m.eps1();
    for (int alpha = 0; alpha <= max_order; ++alpha) {
      for (int n = 0; n <= max_order; ++n) {
        BoundEntry be;
        be.end = end;
        be.alpha = alpha;
        be.n = n;
        std::vector<double> finest_ratio;
        for (int level = 0; level < grid.levels; ++level) {
          const int npts = grid.n_radial << level;
          const double span = grid.span * (1.0 + 0.5 * level);
          auto xs = radial_nodes(A, npts, span);
          xs.push_back(s_max);
          double c = 0.0;
          for (double s : xs) {
            if (s > s_max) continue;
            const double env = std::pow(1.0 + std::abs(std::log(s)), -1.0 - eps - n);
            c = std::max(c, lhs(end, alpha, n, s) / env);
          }
          be.fitted_c.push_back(c);
        }
        const double c0 = be.fitted_c.front();
        const double cf = be.fitted_c.back();
        be.worst_ratio = c0 > 0.0 ? cf / c0 : (cf > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
        be.stable = std::isfinite(cf) && be.worst_ratio <= 1.1;
        for (double c : be.fitted_c) be.stable = be.stable && std::abs(c - c0) <= 0.1 * std::max(c0, 1e-300);
        if (c0 == 0.0 && cf == 0.0) be.stable = true;
        rep.bounds_ok = rep.bounds_ok && be.stable;
        rep.bounds.push_back(std::move(be));
      }
    }
  }
  rep.passed = rep.positivity_ok && rep.periodicity_ok && rep.bounds_ok;
  return rep;
}

LiouvilleMetric build_metric(const MetricConfig& c, const BuildOptions& options) {
  if (!(c.A > 0.0)) throw Error(Errc::config_error, "metric.A must be positive");
  if (!(c.B > 0.0)) throw Error(Errc::config_error, "metric.B must be positive");
  const bool tabulated = c.family == "tabulated";
  if (c.family != "hyperbolic_bump" && c.family != "one_ended" && !tabulated) {
    throw Error(Errc::invalid_family, "unknown metric family '" + c.family + "'");
  }
  for (const auto& [k, v] : c.params) {
    if (!analytic_keys.count(k)) throw Error(Errc::invalid_family, "unknown parameter '" + k + "'");
    if (!std::isfinite(v)) throw Error(Errc::config_error, "parameter '" + k + "' is not finite");
  }
  const Expr x = Expr::var();
  const double c0 = param(c, "c0", 1.0);
  const double c1 = c.family == "one_ended" ? 0.0 : param(c, "c1", 1.0);

  ScalarFunction a_reg, b;
  if (tabulated) {
    if (c.p_samples.empty() || c.b_samples.empty()) {
      throw Error(Errc::config_error, "tabulated family needs p_samples and b_samples");
    }
    a_reg = ScalarFunction::spline(c.p_samples, 0.0, c.A / (c.p_samples.size() - 1), c.spline_order)
                .plus(param(c, "a_shift", 0.0));
    b = ScalarFunction(trig_interpolant(c.b_samples, c.B) + param(c, "b_shift", 0.0));
  } else {
    Expr p = Expr::constant(param(c, "a_shift", 0.0));
    const double h = param(c, "bump_height", 0.0);
    if (h != 0.0) {
      const double xc = param(c, "bump_center", 0.5 * c.A);
      const double w = param(c, "bump_width", 0.2 * c.A);
      if (!(w > 0.0)) throw Error(Errc::config_error, "bump_width must be positive");
      p = p + h * bump((x - xc) / w);
    }
    if (const double s = param(c, "spike_amp", 0.0); s != 0.0) {
      p = p + s * pow(x, param(c, "spike_power", -0.5));
    }
    a_reg = ScalarFunction(p);
    b = ScalarFunction(trig_b(c));
  }
  LiouvilleMetric m(c.A, c.B, c0, c1, a_reg, b, c.eps0, c.eps1, c.delta);
  m.family = c.family;
  m.params = c.params;
  check_positivity(m);
  if (options.validate) {
    const auto rep = validate_ahls(m);
    if (!rep.passed) {
      std::string why = !rep.periodicity_ok ? "b is not periodic" : "end decay bound fails";
      throw Error(Errc::validation_failed, "metric does not satisfy the end conditions: " + why);
    }
  }
  return m;
}

RadialPotential::RadialPotential(const LiouvilleMetric& m, double lambda, cplx shift)
    : m_(m), lambda_(lambda), kappa_(lambda * lambda + 0.25), shift_(shift) {
  if (lambda == 0.0) throw Error(Errc::zero_energy, "λ = 0 is excluded");
}

cplx RadialPotential::q(double x) const { return -kappa_ * m_.a(x) + shift_; }

cplx RadialPotential::q0(double x) const {
  const double s = m_.A() - x;
  return -kappa_ * ((m_.c0() - 1.0) / (x * x) + m_.c1() / (s * s) + m_.a_regular(x)) + shift_;
}

cplx RadialPotential::q1(double x) const {
  const double s = m_.A() - x;
  return -kappa_ * (m_.c0() / (x * x) + (m_.c1() - 1.0) / (s * s) + m_.a_regular(x)) + shift_;
}

RadialPotential radial_potential(const LiouvilleMetric& m, double lambda) {
  return RadialPotential(m, lambda);
}

double end_area(const LiouvilleMetric& m, double eps) {
  const double A = m.A(), B = m.B();
  if (!(eps > 0.0) || eps > 0.5 * A) throw Error(Errc::domain_error, "eps must lie in (0, A/2]");
  if (eps == 0.5 * A) return 0.0;
  using boost::math::quadrature::gauss_kronrod;
  double err = 0.0;
  const double ia_reg = gauss_kronrod<double, 31>::integrate(
      [&](double x) { return m.a_regular(x); }, eps, 0.5 * A, 20, 1e-13, &err);
  const double ia = m.c0() * (1.0 / eps - 2.0 / A) + m.c1() * (2.0 / A - 1.0 / (A - eps)) + ia_reg;
  const double ib = gauss_kronrod<double, 31>::integrate([&](double y) { return m.b(y); }, 0.0, B, 20,
                                                         1e-13, &err);
  return B * ia - (0.5 * A - eps) * ib;
}

}  // namespace ahls::metric
