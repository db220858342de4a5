#pragma once

// Scalar functions of one variable as immutable expression trees with
// symbolic differentiation.

#include <memory>
#include <string>

namespace ahls {

class Expr {
 public:
  struct Node;

  Expr();  // constant 0
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Expr constant(double c);
  static Expr var();

  double operator()(double x) const;
  Expr derivative() const;
  Expr derivative(int order) const;
  bool is_constant() const;
  std::string str() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  friend Expr pow(const Expr& a, double p);
  friend Expr sin(const Expr& a);
  friend Expr cos(const Expr& a);
  friend Expr exp(const Expr& a);
  friend Expr log(const Expr& a);
  // exp(-1/(1-u^2)) for |u| < 1, else 0
  friend Expr bump(const Expr& u);

 private:
  std::shared_ptr<const Node> node_;
};

Expr operator+(const Expr& a, double c);
Expr operator+(double c, const Expr& a);
Expr operator-(const Expr& a, double c);
Expr operator-(double c, const Expr& a);
Expr operator*(double c, const Expr& a);
Expr operator*(const Expr& a, double c);
Expr operator/(const Expr& a, double c);
Expr operator/(double c, const Expr& a);

}  // namespace ahls
