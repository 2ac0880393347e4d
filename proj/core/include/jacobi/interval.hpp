#pragma once

#include <map>
#include <string>

#include "jacobi/poly.hpp"
#include "jacobi/rational.hpp"

namespace jacobi {

/// Closed rational interval [lo, hi]. All arithmetic is exact, so the
/// enclosures are sound without outward rounding.
struct Interval {
  Rational lo;
  Rational hi;

  Interval() = default;
  Interval(const Rational& point) : lo(point), hi(point) {}  // NOLINT(google-explicit-constructor)
  /// Throws Error(InvalidArgument) if lo > hi.
  Interval(const Rational& lo_, const Rational& hi_);

  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
  bool contains(const Rational& q) const { return lo <= q && q <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool contains_zero() const { return lo <= 0 && hi >= 0; }

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  Interval operator-() const;
  Interval pow(unsigned e) const;
  friend bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }

  std::string to_string() const;
};

using Box = std::map<Variable, Interval>;

/// Enclosure of {p(x) : x in box}. Throws Error(UnboundVariable) if a
/// variable of p is not bound by the box.
Interval interval_evaluate(const Poly& p, const Box& box);

}  // namespace jacobi
