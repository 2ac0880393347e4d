#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jacobi/rational.hpp"
#include "jacobi/variable.hpp"

namespace jacobi {

/// Power product. Entries are (variable id, exponent) sorted by id with no
/// zero exponents.
class Monomial {
 public:
  using Entry = std::pair<std::uint32_t, std::uint32_t>;

  Monomial() = default;
  explicit Monomial(std::vector<Entry> entries);
  static Monomial of(Variable v, std::uint32_t exponent = 1);

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::uint32_t degree() const noexcept { return degree_; }
  std::uint32_t degree(Variable v) const;
  bool is_one() const noexcept { return entries_.empty(); }

  bool divides(const Monomial& other) const;
  /// this / divisor; requires divisor.divides(*this).
  Monomial quotient(const Monomial& divisor) const;
  Monomial without(Variable v) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.entries_ == b.entries_; }

  std::size_t hash() const noexcept;

 private:
  std::vector<Entry> entries_;
  std::uint32_t degree_ = 0;
};

/// Graded-lexicographic comparison: negative if a < b, positive if a > b.
int grlex_compare(const Monomial& a, const Monomial& b);

struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_compare(a, b) > 0; }
};

struct Term {
  Monomial mono;
  Rational coeff;
};

using Assignment = std::map<Variable, Rational>;

/// Sparse multivariate polynomial over Q. Terms are kept in descending
/// graded-lex order with no zero coefficients.
class Poly {
 public:
  Poly() = default;
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Poly(int c) : Poly(Rational(c)) {}   // NOLINT(google-explicit-constructor)
  explicit Poly(Variable v);

  static Poly from_terms(std::vector<Term> terms);
  static Poly monomial(const Monomial& m, const Rational& c);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  /// Constant term value; meaningful for any polynomial.
  Rational constant_term() const;
  const Term& leading() const { return terms_.front(); }
  const Rational& leading_coeff() const { return terms_.front().coeff; }

  std::uint32_t total_degree() const;
  std::uint32_t degree(Variable v) const;
  bool contains(Variable v) const;
  /// Variables occurring in the polynomial, highest-ranked first.
  std::vector<Variable> variables() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b);

  Poly scaled(const Rational& c) const;
  Poly pow(unsigned e) const;
  Poly derivative(Variable v) const;

  /// Exact value; throws Error(UnboundVariable) if a variable is unbound.
  Rational evaluate(const Assignment& point) const;
  /// Substitutes the bound variables, leaving the others symbolic.
  Poly substitute(const Assignment& point) const;
  Poly substitute(Variable v, const Poly& value) const;

  /// Dense coefficient list with respect to v: coeffs[k] multiplies v^k.
  std::vector<Poly> coefficients(Variable v) const;
  static Poly from_coefficients(Variable v, const std::vector<Poly>& coeffs);
  Poly leading_coeff_in(Variable v) const;

  /// Rational c, signed like the leading coefficient, such that this / c has
  /// coprime integer coefficients and a positive leading coefficient.
  /// Zero for the zero polynomial.
  Rational content() const;
  /// this / content(): integer primitive part with positive leading coefficient.
  Poly primitive() const;
  /// Divides by the leading coefficient.
  Poly monic() const;

  std::string to_string() const;
  std::size_t hash() const noexcept;

 private:
  std::vector<Term> terms_;
};

Poly var(Variable v);
Poly var(std::string_view name);

// ---- polynomial division and gcd ------------------------------------------

/// Exact quotient a / b if b divides a in Q[vars], otherwise nullopt.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

/// Pseudo-remainder of a by b with respect to v: lc_v(b)^k * a = q*b + r,
/// k = max(deg_v a - deg_v b + 1, 0).
Poly pseudo_remainder(const Poly& a, const Poly& b, Variable v);

/// Greatest common divisor in Q[vars], normalized to an integer primitive
/// polynomial with positive leading coefficient (gcd(0, 0) = 0).
Poly gcd(const Poly& a, const Poly& b);

/// Greatest common divisor of the coefficients of p viewed in Q[others][v].
Poly content_in(const Poly& p, Variable v);

std::ostream& operator<<(std::ostream& os, const Poly& p);

}  // namespace jacobi

template <>
struct std::hash<jacobi::Monomial> {
  std::size_t operator()(const jacobi::Monomial& m) const noexcept { return m.hash(); }
};
