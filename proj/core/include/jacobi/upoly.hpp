#pragma once

#include <string>
#include <utility>
#include <vector>

#include "jacobi/interval.hpp"
#include "jacobi/poly.hpp"
#include "jacobi/rational.hpp"

namespace jacobi {

/// Dense univariate polynomial over Q; coeffs[k] multiplies t^k and the top
/// coefficient is nonzero (the zero polynomial has no coefficients). Used for
/// root isolation and arithmetic modulo a defining polynomial.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);
  UPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  static UPoly x();
  /// Requires p to have no variable other than v.
  static UPoly from_poly(const Poly& p, Variable v);
  Poly to_poly(Variable v) const;

  const std::vector<Rational>& coeffs() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const Rational& lc() const { return c_.back(); }
  Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }

  Rational evaluate(const Rational& t) const;
  Sign sign_at(const Rational& t) const { return sign_of(evaluate(t)); }
  Interval evaluate(const Interval& iv) const;

  UPoly derivative() const;
  UPoly monic() const;
  /// Integer coefficients, content 1, positive leading coefficient.
  UPoly primitive() const;

  UPoly operator-() const;
  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
  UPoly scaled(const Rational& k) const;

  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Euclidean division a = q*b + r with deg r < deg b; b nonzero.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly rem(const UPoly& a, const UPoly& b);
/// Monic gcd (zero if both are zero).
UPoly gcd(const UPoly& a, const UPoly& b);
/// p / gcd(p, p'), primitive.
UPoly squarefree_part(const UPoly& p);
/// Yun decomposition: list of (factor, multiplicity) with primitive,
/// pairwise coprime squarefree factors of positive degree.
std::vector<std::pair<UPoly, unsigned>> squarefree_decomposition(const UPoly& p);

}  // namespace jacobi
