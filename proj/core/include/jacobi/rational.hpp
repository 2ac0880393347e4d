#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace jacobi {

/// Exact rational number. mpq_class keeps numerator/denominator coprime with
/// a positive denominator once canonicalized; every constructor path in this
/// library canonicalizes.
using Rational = mpq_class;
using Integer = mpz_class;

enum class Sign : int { Negative = -1, Zero = 0, Positive = 1 };

inline Sign sign_of(const Rational& q) {
  const int s = sgn(q);
  return s < 0 ? Sign::Negative : (s > 0 ? Sign::Positive : Sign::Zero);
}

inline Sign operator*(Sign a, Sign b) {
  return static_cast<Sign>(static_cast<int>(a) * static_cast<int>(b));
}

inline char sign_char(Sign s) {
  return s == Sign::Negative ? '-' : (s == Sign::Positive ? '+' : '0');
}

/// "p/q", or "p" when q = 1.
std::string to_string(const Rational& q);

/// Parses "p", "-p", "p/q" (q > 0). Throws ParseError on malformed input and
/// Error(ZeroDenominator) on q = 0.
Rational parse_rational(std::string_view text);

/// num/den in canonical form (mpq_class(num, den) alone is not canonical).
inline Rational ratio(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Simplest rational (smallest denominator) in the closed interval [lo, hi].
Rational simplest_between(const Rational& lo, const Rational& hi);

std::size_t hash_value(const Rational& q);

}  // namespace jacobi
