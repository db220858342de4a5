#include "ahls/expr.hpp"

#include <cmath>
#include <sstream>

namespace ahls {

enum class Op { constant, var, add, mul, pow, sin, cos, exp, log, bump };

struct Expr::Node {
  Op op;
  double c = 0.0;  // constant value or exponent
  Expr a, b;
};

Expr::Expr() = default;  // null node is the constant 0

Expr Expr::constant(double c) {
  auto n = std::make_shared<Node>();
  n->op = Op::constant;
  n->c = c;
  return Expr(n);
}

Expr Expr::var() {
  auto n = std::make_shared<Node>();
  n->op = Op::var;
  return Expr(n);
}

bool Expr::is_constant() const { return !node_ || node_->op == Op::constant; }

namespace {

bool const_value(const Expr& e, double& v) {
  if (!e.is_constant()) return false;
  v = e(0.0);
  return true;
}

}  // namespace

double Expr::operator()(double x) const {
  if (!node_) return 0.0;
  const Node& n = *node_;
  switch (n.op) {
    case Op::constant: return n.c;
    case Op::var: return x;
    case Op::add: return n.a(x) + n.b(x);
    case Op::mul: {
      // left factor first: a zero there (bump outside its support) must not
      // meet an infinite right factor
      const double l = n.a(x);
      if (l == 0.0) return 0.0;
      return l * n.b(x);
    }
    case Op::pow: {
      const double base = n.a(x);
      const double p = n.c;
      if (p == std::round(p) && std::abs(p) < 64) return std::pow(base, static_cast<int>(p));
      return std::pow(base, p);
    }
    case Op::sin: return std::sin(n.a(x));
    case Op::cos: return std::cos(n.a(x));
    case Op::exp: return std::exp(n.a(x));
    case Op::log: return std::log(n.a(x));
    case Op::bump: {
      const double u = n.a(x);
      if (std::abs(u) >= 1.0) return 0.0;
      return std::exp(-1.0 / (1.0 - u * u));
    }
  }
  return 0.0;
}

Expr operator+(const Expr& a, const Expr& b) {
  double va, vb;
  const bool ca = const_value(a, va), cb = const_value(b, vb);
  if (ca && cb) return Expr::constant(va + vb);
  if (ca && va == 0.0) return b;
  if (cb && vb == 0.0) return a;
  auto n = std::make_shared<Expr::Node>();
  n->op = Op::add;
  n->a = a;
  n->b = b;
  return Expr(n);
}

Expr operator*(const Expr& a, const Expr& b) {
  double va, vb;
  const bool ca = const_value(a, va), cb = const_value(b, vb);
  if (ca && cb) return Expr::constant(va * vb);
  if ((ca && va == 0.0) || (cb && vb == 0.0)) return Expr::constant(0.0);
  if (ca && va == 1.0) return b;
  if (cb && vb == 1.0) return a;
  auto n = std::make_shared<Expr::Node>();
  n->op = Op::mul;
  n->a = a;
  n->b = b;
  return Expr(n);
}

Expr operator-(const Expr& a) { return Expr::constant(-1.0) * a; }
Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr pow(const Expr& a, double p) {
  if (p == 0.0) return Expr::constant(1.0);
  if (p == 1.0) return a;
  double va;
  if (const_value(a, va)) return Expr::constant(std::pow(va, p));
  auto n = std::make_shared<Expr::Node>();
  n->op = Op::pow;
  n->a = a;
  n->c = p;
  return Expr(n);
}

Expr operator/(const Expr& a, const Expr& b) { return a * pow(b, -1.0); }

namespace {

Expr unary(Op op, const Expr& a, double (*f)(double)) {
  double va;
  if (const_value(a, va)) return Expr::constant(f(va));
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->a = a;
  return Expr(n);
}

double bump_value(double u) { return std::abs(u) >= 1.0 ? 0.0 : std::exp(-1.0 / (1.0 - u * u)); }

}  // namespace

Expr sin(const Expr& a) { return unary(Op::sin, a, [](double v) { return std::sin(v); }); }
Expr cos(const Expr& a) { return unary(Op::cos, a, [](double v) { return std::cos(v); }); }
Expr exp(const Expr& a) { return unary(Op::exp, a, [](double v) { return std::exp(v); }); }
Expr log(const Expr& a) { return unary(Op::log, a, [](double v) { return std::log(v); }); }
Expr bump(const Expr& u) { return unary(Op::bump, u, bump_value); }

Expr operator+(const Expr& a, double c) { return a + Expr::constant(c); }
Expr operator+(double c, const Expr& a) { return Expr::constant(c) + a; }
Expr operator-(const Expr& a, double c) { return a + Expr::constant(-c); }
Expr operator-(double c, const Expr& a) { return Expr::constant(c) - a; }
Expr operator*(double c, const Expr& a) { return Expr::constant(c) * a; }
Expr operator*(const Expr& a, double c) { return a * Expr::constant(c); }
Expr operator/(const Expr& a, double c) { return a * Expr::constant(1.0 / c); }
Expr operator/(double c, const Expr& a) { return Expr::constant(c) * pow(a, -1.0); }

Expr Expr::derivative() const {
  if (!node_) return {};
  const Node& n = *node_;
  switch (n.op) {
    case Op::constant: return constant(0.0);
    case Op::var: return constant(1.0);
    case Op::add: return n.a.derivative() + n.b.derivative();
    case Op::mul: return n.a.derivative() * n.b + n.a * n.b.derivative();
    case Op::pow: return n.c * pow(n.a, n.c - 1.0) * n.a.derivative();
    case Op::sin: return cos(n.a) * n.a.derivative();
    case Op::cos: return -sin(n.a) * n.a.derivative();
    case Op::exp: return *this * n.a.derivative();
    case Op::log: return pow(n.a, -1.0) * n.a.derivative();
    case Op::bump: {
      // d/du bump(u) = bump(u) * (-2u) / (1-u^2)^2, bump factor kept leftmost
      const Expr& u = n.a;
      return *this * ((-2.0 * u) * pow(1.0 - u * u, -2.0)) * u.derivative();
    }
  }
  return constant(0.0);
}

Expr Expr::derivative(int order) const {
  Expr e = *this;
  for (int i = 0; i < order; ++i) e = e.derivative();
  return e;
}

std::string Expr::str() const {
  if (!node_) return "0";
  const Node& n = *node_;
  std::ostringstream os;
  os.precision(17);
  switch (n.op) {
    case Op::constant: os << n.c; break;
    case Op::var: os << "x"; break;
    case Op::add: os << "(" << n.a.str() << " + " << n.b.str() << ")"; break;
    case Op::mul: os << n.a.str() << "*" << n.b.str(); break;
    case Op::pow: os << "(" << n.a.str() << ")^" << n.c; break;
    case Op::sin: os << "sin(" << n.a.str() << ")"; break;
    case Op::cos: os << "cos(" << n.a.str() << ")"; break;
    case Op::exp: os << "exp(" << n.a.str() << ")"; break;
    case Op::log: os << "log(" << n.a.str() << ")"; break;
    case Op::bump: os << "bump(" << n.a.str() << ")"; break;
  }
  return os.str();
}

}  // namespace ahls
