#pragma once

#include <ostream>
#include <string>
#include <string_view>

#include "jacobi/poly.hpp"

namespace jacobi {

/// Quotient of polynomials kept in canonical form: numerator and denominator
/// coprime, denominator monic in graded-lex order. Two equal rational
/// functions are therefore structurally equal.
class RationalFunction {
 public:
  RationalFunction() : denom_(1) {}
  RationalFunction(const Poly& p) : numer_(p), denom_(1) {}  // NOLINT(google-explicit-constructor)
  RationalFunction(const Rational& c) : numer_(c), denom_(1) {}  // NOLINT(google-explicit-constructor)
  RationalFunction(int c) : numer_(c), denom_(1) {}  // NOLINT(google-explicit-constructor)
  /// Throws Error(ZeroDenominator) if denom is zero.
  RationalFunction(const Poly& numer, const Poly& denom);

  const Poly& numer() const noexcept { return numer_; }
  const Poly& denom() const noexcept { return denom_; }
  bool is_zero() const noexcept { return numer_.is_zero(); }
  bool is_polynomial() const { return denom_.is_constant(); }
  bool is_constant() const { return numer_.is_constant() && denom_.is_constant(); }
  bool contains(Variable v) const { return numer_.contains(v) || denom_.contains(v); }
  std::vector<Variable> variables() const;

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  /// Throws Error(ZeroDenominator) when dividing by zero.
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.numer_ == b.numer_ && a.denom_ == b.denom_;
  }

  RationalFunction pow(unsigned e) const;
  RationalFunction derivative(Variable v) const;
  /// Throws Error(VanishingDenominator) if the denominator evaluates to zero
  /// and Error(UnboundVariable) if a variable is not bound.
  Rational evaluate(const Assignment& point) const;
  /// Partial substitution; throws Error(VanishingDenominator) if the
  /// denominator becomes identically zero.
  RationalFunction substitute(const Assignment& point) const;
  RationalFunction substitute(Variable v, const RationalFunction& value) const;

  std::string to_string() const;

 private:
  Poly numer_;
  Poly denom_;
};

/// Partial derivative by variable name; throws Error(UnknownVariable) for a
/// name that was never declared.
RationalFunction differentiate(const RationalFunction& f, std::string_view name);

std::ostream& operator<<(std::ostream& os, const RationalFunction& f);

}  // namespace jacobi
