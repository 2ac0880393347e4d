#include "jacobi/rational_function.hpp"

#include <algorithm>

#include "jacobi/errors.hpp"

namespace jacobi {

RationalFunction::RationalFunction(const Poly& numer, const Poly& denom) {
  if (denom.is_zero()) throw Error(ErrorKind::ZeroDenominator, "rational function with zero denominator");
  if (numer.is_zero()) {
    denom_ = Poly(1);
    return;
  }
  if (denom.is_constant()) {
    numer_ = numer.scaled(Rational(1) / denom.leading_coeff());
    denom_ = Poly(1);
    return;
  }
  const Poly g = gcd(numer, denom);
  Poly n = g.is_constant() ? numer : *divide_exact(numer, g);
  Poly d = g.is_constant() ? denom : *divide_exact(denom, g);
  const Rational lc = d.leading_coeff();
  numer_ = n.scaled(Rational(1) / lc);
  denom_ = d.scaled(Rational(1) / lc);
}

std::vector<Variable> RationalFunction::variables() const {
  auto v = numer_.variables();
  for (auto w : denom_.variables()) v.push_back(w);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.numer_ = -r.numer_;
  return r;
}

namespace {

RationalFunction make_raw(Poly n, Poly d) {
  // Callers guarantee coprimality is re-established by the constructor.
  return RationalFunction(n, d);
}

}  // namespace

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.denom_ == b.denom_) {
    if (a.denom_.is_constant()) return RationalFunction(a.numer_ + b.numer_);
    return make_raw(a.numer_ + b.numer_, a.denom_);
  }
  if (a.denom_.is_constant()) return make_raw(a.numer_ * b.denom_ + b.numer_, b.denom_);
  if (b.denom_.is_constant()) return make_raw(a.numer_ + b.numer_ * a.denom_, a.denom_);
  const Poly g = gcd(a.denom_, b.denom_);
  if (g.is_constant()) return make_raw(a.numer_ * b.denom_ + b.numer_ * a.denom_, a.denom_ * b.denom_);
  const Poly bd = *divide_exact(b.denom_, g);
  const Poly ad = *divide_exact(a.denom_, g);
  return make_raw(a.numer_ * bd + b.numer_ * ad, a.denom_ * bd);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return RationalFunction();
  if (a.denom_.is_constant() && b.denom_.is_constant()) return RationalFunction(a.numer_ * b.numer_);
  // Cross-cancel before multiplying to keep the operands small.
  const Poly g1 = gcd(a.numer_, b.denom_);
  const Poly g2 = gcd(b.numer_, a.denom_);
  const Poly an = g1.is_constant() ? a.numer_ : *divide_exact(a.numer_, g1);
  const Poly bd = g1.is_constant() ? b.denom_ : *divide_exact(b.denom_, g1);
  const Poly bn = g2.is_constant() ? b.numer_ : *divide_exact(b.numer_, g2);
  const Poly ad = g2.is_constant() ? a.denom_ : *divide_exact(a.denom_, g2);
  RationalFunction r;
  const Poly d = ad * bd;
  const Rational lc = d.leading_coeff();
  r.numer_ = (an * bn).scaled(Rational(1) / lc);
  r.denom_ = d.scaled(Rational(1) / lc);
  return r;
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw Error(ErrorKind::ZeroDenominator, "division by zero rational function");
  RationalFunction inv;
  inv.numer_ = b.denom_;
  inv.denom_ = b.numer_;
  const Rational lc = inv.denom_.leading_coeff();
  inv.numer_ = inv.numer_.scaled(Rational(1) / lc);
  inv.denom_ = inv.denom_.scaled(Rational(1) / lc);
  return a * inv;
}

RationalFunction RationalFunction::pow(unsigned e) const {
  RationalFunction r;
  r.numer_ = numer_.pow(e);
  r.denom_ = denom_.pow(e);
  return r;
}

RationalFunction RationalFunction::derivative(Variable v) const {
  if (!contains(v)) return RationalFunction();
  if (denom_.is_constant()) return RationalFunction(numer_.derivative(v));
  return RationalFunction(numer_.derivative(v) * denom_ - numer_ * denom_.derivative(v), denom_ * denom_);
}

Rational RationalFunction::evaluate(const Assignment& point) const {
  const Rational d = denom_.evaluate(point);
  if (d == 0) throw Error(ErrorKind::VanishingDenominator, "denominator " + denom_.to_string() + " vanishes");
  return numer_.evaluate(point) / d;
}

RationalFunction RationalFunction::substitute(const Assignment& point) const {
  const Poly d = denom_.substitute(point);
  if (d.is_zero()) throw Error(ErrorKind::VanishingDenominator, "denominator " + denom_.to_string() + " vanishes");
  return RationalFunction(numer_.substitute(point), d);
}

RationalFunction RationalFunction::substitute(Variable v, const RationalFunction& value) const {
  // Horner evaluation in the field of rational functions.
  auto eval = [&](const Poly& p) {
    const auto coeffs = p.coefficients(v);
    RationalFunction acc;
    for (auto k = coeffs.size(); k-- > 0;) acc = acc * value + RationalFunction(coeffs[k]);
    return acc;
  };
  const RationalFunction d = eval(denom_);
  if (d.is_zero()) throw Error(ErrorKind::VanishingDenominator, "denominator " + denom_.to_string() + " vanishes");
  return eval(numer_) / d;
}

std::string RationalFunction::to_string() const {
  if (denom_.is_constant()) return numer_.to_string();
  return "(" + numer_.to_string() + ")/(" + denom_.to_string() + ")";
}

RationalFunction differentiate(const RationalFunction& f, std::string_view name) {
  const auto v = Variable::lookup(name);
  if (!v) throw Error(ErrorKind::UnknownVariable, "unknown variable '" + std::string(name) + "'");
  return f.derivative(*v);
}

std::ostream& operator<<(std::ostream& os, const RationalFunction& f) { return os << f.to_string(); }

}  // namespace jacobi
