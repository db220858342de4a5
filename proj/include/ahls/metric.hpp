#pragma once

// Liouville metrics (a(x) - b(y))(dx^2 + dy^2) on (0,A) x (0,B) with two
// asymptotically hyperbolic ends, and the radial potential they induce.

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ahls/error.hpp"
#include "ahls/expr.hpp"

namespace ahls::metric {

// A smooth scalar function with derivatives up to order 4: symbolic for
// expression trees, centered differences for splines.
class ScalarFunction {
 public:
  static constexpr int max_derivative = 4;

  ScalarFunction();  // identically zero
  explicit ScalarFunction(const Expr& e);
  // Interpolating B-spline (order 3 or 5) through samples on a uniform grid.
  static ScalarFunction spline(std::vector<double> samples, double x0, double step, int order);

  double operator()(double x) const { return derivative(x, 0); }
  double derivative(double x, int k) const;
  bool symbolic() const { return !spline_; }
  const Expr& expr(int k = 0) const { return d_[k]; }
  ScalarFunction plus(double c) const;

 private:
  std::array<Expr, max_derivative + 1> d_;
  std::function<double(double)> spline_;
  double scale_ = 1.0;  // length scale for difference steps
  double offset_ = 0.0;
};

struct MetricConfig {
  std::string family = "hyperbolic_bump";
  double A = 1.0;
  double B = 0.0;
  double eps0 = 1.0;
  double eps1 = 1.0;
  double delta = 0.0;  // 0 selects A/4
  std::map<std::string, double> params;
  std::vector<double> p_samples;  // tabulated family: a - 1/x^2 - 1/(A-x)^2 on [0, A]
  std::vector<double> b_samples;  // tabulated family: b on [0, B), uniform
  int spline_order = 5;
};

class LiouvilleMetric {
 public:
  // a(x) = c0/x^2 + c1/(A-x)^2 + a_reg(x)
  LiouvilleMetric(double A, double B, double c0, double c1, ScalarFunction a_reg, ScalarFunction b,
                  double eps0 = 1.0, double eps1 = 1.0, double delta = 0.0);

  double A() const { return A_; }
  double B() const { return B_; }
  double eps0() const { return eps0_; }
  double eps1() const { return eps1_; }
  double delta() const { return delta_; }
  double c0() const { return c0_; }
  double c1() const { return c1_; }

  double a(double x) const;
  double a_regular(double x) const { return a_reg_(x); }
  double b(double y) const { return b_(y); }
  double b_derivative(double y, int k) const { return b_.derivative(y, k); }
  const ScalarFunction& a_reg_function() const { return a_reg_; }
  const ScalarFunction& b_function() const { return b_; }

  // Regular part of a at an end, as a function of the distance s to that end:
  // a = c_end/s^2 + end_regular(s). Derivatives are in s.
  double end_regular(int end, double s, int k = 0) const;

  // (a + C, b + C): the same metric.
  LiouvilleMetric gauge_shifted(double C) const;
  // (a + C, b): a different metric when C != 0.
  LiouvilleMetric a_shifted(double C) const;
  LiouvilleMetric b_shifted(double C) const;

  std::string family;
  std::map<std::string, double> params;

 private:
  double A_, B_, c0_, c1_;
  ScalarFunction a_reg_, b_;
  double eps0_, eps1_, delta_;
};

struct BuildOptions {
  bool validate = true;
};

LiouvilleMetric build_metric(const MetricConfig& config, const BuildOptions& options = {});

struct Grid {
  int n_radial = 1024;
  int n_angular = 512;
  double span = 20.0;  // radial nodes x = A / (1 + e^{-u}), u in [-span, span]
  int levels = 3;      // refinement levels for constant stability
};

struct BoundEntry {
  int end = 0;    // 0: x -> 0, 1: x -> A
  int alpha = 0;  // y-derivative order
  int n = 0;      // (x d/dx) power
  std::vector<double> fitted_c;  // per refinement level
  double worst_ratio = 0.0;      // finest-level |LHS| / (C_coarse * envelope)
  bool stable = false;
};

struct ValidationReport {
  int max_order = 2;
  bool positivity_ok = true;
  double min_a_minus_b = 0.0;
  double min_x = 0.0;
  double min_y = 0.0;
  bool periodicity_ok = true;
  int periodicity_fail_order = -1;
  double periodicity_defect = 0.0;
  std::vector<BoundEntry> bounds;
  bool bounds_ok = true;
  bool passed = false;
};

ValidationReport validate_ahls(const LiouvilleMetric& m, const Grid& grid = {}, int max_order = 2,
                               int periodic_order = 4);

// Positivity scan on the validation grid; throws PositivityViolation.
void check_positivity(const LiouvilleMetric& m, const Grid& grid = {});

class RadialPotential {
 public:
  RadialPotential(const LiouvilleMetric& m, double lambda, cplx shift = 0.0);

  double lambda() const { return lambda_; }
  double kappa() const { return kappa_; }  // λ² + ¼
  double A() const { return m_.A(); }
  cplx shift() const { return shift_; }
  const LiouvilleMetric& metric() const { return m_; }

  cplx q(double x) const;
  // q(x) + κ/x², formed without cancelling the singular term
  cplx q0(double x) const;
  // q(x) + κ/(A-x)²
  cplx q1(double x) const;
  // end potential as a function of the distance s to the end
  cplx q_end(int end, double s) const { return end == 0 ? q0(s) : q1(A() - s); }

  RadialPotential shifted(cplx L) const { return RadialPotential(m_, lambda_, shift_ + L); }

 private:
  LiouvilleMetric m_;
  double lambda_;
  double kappa_;
  cplx shift_;
};

RadialPotential radial_potential(const LiouvilleMetric& m, double lambda);

double end_area(const LiouvilleMetric& m, double eps);

}  // namespace ahls::metric
