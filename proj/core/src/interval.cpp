#include "jacobi/interval.hpp"

#include <algorithm>

#include "jacobi/errors.hpp"

namespace jacobi {

Interval::Interval(const Rational& lo_, const Rational& hi_) : lo(lo_), hi(hi_) {
  if (lo > hi) throw Error(ErrorKind::InvalidArgument, "interval with lo > hi: [" + jacobi::to_string(lo) + ", " +
                                                           jacobi::to_string(hi) + "]");
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r;
  r.lo = a.lo + b.lo;
  r.hi = a.hi + b.hi;
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r;
  r.lo = a.lo - b.hi;
  r.hi = a.hi - b.lo;
  return r;
}

Interval Interval::operator-() const {
  Interval r;
  r.lo = -hi;
  r.hi = -lo;
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  const Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  Interval r;
  r.lo = std::min({p1, p2, p3, p4});
  r.hi = std::max({p1, p2, p3, p4});
  return r;
}

Interval Interval::pow(unsigned e) const {
  if (e == 0) return Interval(Rational(1));
  auto rpow = [e](const Rational& q) {
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), e);
    return r;
  };
  const Rational a = rpow(lo), b = rpow(hi);
  Interval r;
  r.lo = std::min(a, b);
  r.hi = std::max(a, b);
  // Even power of an interval straddling zero.
  if (e % 2 == 0 && lo < 0 && hi > 0) r.lo = 0;
  return r;
}

std::string Interval::to_string() const {
  return "[" + jacobi::to_string(lo) + ", " + jacobi::to_string(hi) + "]";
}

Interval interval_evaluate(const Poly& p, const Box& box) {
  Interval sum(Rational(0));
  for (const auto& t : p.terms()) {
    Interval term(t.coeff);
    for (const auto& [id, e] : t.mono.entries()) {
      const auto it = box.find(Variable::from_id(id));
      if (it == box.end())
        throw Error(ErrorKind::UnboundVariable, "variable '" + Variable::from_id(id).name() + "' is not bound");
      term = term * it->second.pow(e);
    }
    sum = sum + term;
  }
  return sum;
}

}  // namespace jacobi
