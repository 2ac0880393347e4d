#include <algorithm>
#include <cmath>
#include <sstream>

#include "jacobi/errors.hpp"
#include "jacobi/real_algebra.hpp"

namespace jacobi {

namespace {

// Positive multiple of p with coprime integer coefficients.
UPoly positive_normalize(const UPoly& p) {
  if (p.is_zero()) return p;
  UPoly q = p.primitive();
  return sgn(q.lc()) == sgn(p.lc()) ? q : -q;
}

int variations(const std::vector<Sign>& signs) {
  int v = 0;
  Sign last = Sign::Zero;
  for (Sign s : signs) {
    if (s == Sign::Zero) continue;
    if (last != Sign::Zero && s != last) ++v;
    last = s;
  }
  return v;
}

int variations_at(const std::vector<UPoly>& seq, const Rational& x) {
  std::vector<Sign> s;
  s.reserve(seq.size());
  for (const auto& p : seq) s.push_back(p.sign_at(x));
  return variations(s);
}

// Sign variations at +infinity (positive) or -infinity (negative).
int variations_at_infinity(const std::vector<UPoly>& seq, bool positive) {
  std::vector<Sign> s;
  for (const auto& p : seq) {
    Sign lc = sign_of(p.lc());
    if (!positive && p.degree() % 2 == 1) lc = lc * Sign::Negative;
    s.push_back(lc);
  }
  return variations(s);
}

UPoly squarefree_or_throw(const UPoly& p) {
  if (p.is_zero()) throw Error(ErrorKind::InvalidArgument, "root counting for the zero polynomial");
  return squarefree_part(p);
}

// Cauchy bound: every root r satisfies |r| < bound.
Rational root_bound(const UPoly& p) {
  Rational m = 0;
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, Rational(abs(p.coeff(k) / p.lc())));
  return m + 1;
}

// p has exactly one simple root in (lo, hi) and none at the endpoints.
void bisect_once(const UPoly& p, Interval& iv) {
  const Rational mid = iv.midpoint();
  const Sign sm = p.sign_at(mid);
  if (sm == Sign::Zero) {
    const Rational q = iv.width() / 4;
    iv = Interval(mid - q, mid + q);
    return;
  }
  if (sm == p.sign_at(iv.lo)) {
    iv.lo = mid;
  } else {
    iv.hi = mid;
  }
}

// Roots of a squarefree polynomial inside the open interval (lo, hi) whose
// endpoints are not roots.
void isolate_in(const UPoly& p, const std::vector<UPoly>& seq, Interval iv, int count,
                std::vector<Interval>& out) {
  if (count == 0) return;
  if (count == 1) {
    out.push_back(iv);
    return;
  }
  // Split at a nonroot close to the midpoint.
  Rational split = iv.midpoint();
  for (int k = 3; p.sign_at(split) == Sign::Zero; ++k) split = iv.lo + iv.width() / k;
  const int vl = variations_at(seq, iv.lo), vs = variations_at(seq, split), vh = variations_at(seq, iv.hi);
  isolate_in(p, seq, Interval(iv.lo, split), vl - vs, out);
  isolate_in(p, seq, Interval(split, iv.hi), vs - vh, out);
}

std::vector<Interval> isolate_squarefree(const UPoly& p) {
  std::vector<Interval> out;
  if (p.degree() <= 0) return out;
  const auto seq = sturm_sequence(p);
  const Rational b = root_bound(p);
  const int total = variations_at(seq, -b) - variations_at(seq, b);
  isolate_in(p, seq, Interval(-b, b), total, out);
  return out;
}

Variable sole_variable(const Poly& p) {
  const auto vs = p.variables();
  if (vs.size() > 1) throw Error(ErrorKind::InvalidArgument, "expected a univariate polynomial: " + p.to_string());
  return vs.empty() ? Variable::named("x") : vs.front();
}

}  // namespace

std::vector<UPoly> sturm_sequence(const UPoly& p) {
  std::vector<UPoly> seq;
  if (p.is_zero()) return seq;
  seq.push_back(positive_normalize(p));
  UPoly d = positive_normalize(p.derivative());
  while (!d.is_zero()) {
    seq.push_back(d);
    d = positive_normalize(-rem(seq[seq.size() - 2], seq.back()));
  }
  return seq;
}

std::size_t count_real_roots(const UPoly& p_in, const Interval& iv) {
  const UPoly p = squarefree_or_throw(p_in);
  if (p.degree() <= 0) return 0;
  const auto seq = sturm_sequence(p);
  // V(lo) - V(hi) counts roots in (lo, hi].
  int c = variations_at(seq, iv.lo) - variations_at(seq, iv.hi);
  if (p.sign_at(iv.lo) == Sign::Zero) ++c;
  return static_cast<std::size_t>(c);
}

std::size_t count_real_roots(const UPoly& p) { return count_real_roots_between(p, std::nullopt, std::nullopt); }

std::size_t count_real_roots_between(const UPoly& p_in, const std::optional<Rational>& lo,
                                      const std::optional<Rational>& hi) {
  const UPoly p = squarefree_or_throw(p_in);
  if (p.degree() <= 0) return 0;
  const auto seq = sturm_sequence(p);
  const int vl = lo ? variations_at(seq, *lo) : variations_at_infinity(seq, false);
  const int vh = hi ? variations_at(seq, *hi) : variations_at_infinity(seq, true);
  int c = vl - vh;
  if (hi && p.sign_at(*hi) == Sign::Zero) --c;
  return static_cast<std::size_t>(std::max(c, 0));
}

Poly squarefree_part(const Poly& p) {
  if (p.is_zero()) throw Error(ErrorKind::InvalidArgument, "squarefree part of the zero polynomial");
  const Variable v = sole_variable(p);
  return squarefree_part(UPoly::from_poly(p, v)).to_poly(v);
}

std::size_t count_real_roots(const Poly& p, const Interval& iv) {
  return count_real_roots(UPoly::from_poly(p, sole_variable(p)), iv);
}

std::size_t count_real_roots(const Poly& p) { return count_real_roots(UPoly::from_poly(p, sole_variable(p))); }

std::vector<IsolatedRoot> isolate_real_roots(const UPoly& p) {
  if (p.is_zero()) throw Error(ErrorKind::InvalidArgument, "root isolation for the zero polynomial");
  struct Tagged {
    UPoly f;
    Interval iv;
    unsigned mult;
  };
  std::vector<Tagged> roots;
  for (const auto& [f, mult] : squarefree_decomposition(p))
    for (const auto& iv : isolate_squarefree(f)) roots.push_back({f, iv, mult});
  // Factors are coprime, so overlapping intervals separate under refinement.
  for (bool overlap = true; overlap;) {
    overlap = false;
    std::sort(roots.begin(), roots.end(), [](const Tagged& a, const Tagged& b) { return a.iv.lo < b.iv.lo; });
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
      if (roots[i].iv.hi > roots[i + 1].iv.lo) {
        bisect_once(roots[i].f, roots[i].iv);
        bisect_once(roots[i + 1].f, roots[i + 1].iv);
        overlap = true;
      }
    }
  }
  std::vector<IsolatedRoot> out;
  for (const auto& r : roots) out.push_back({r.iv, r.mult});
  return out;
}

std::vector<IsolatedRoot> isolate_real_roots(const Poly& p) {
  return isolate_real_roots(UPoly::from_poly(p, sole_variable(p)));
}

// ---- AlgebraicNumber -----------------------------------------------------------------

AlgebraicNumber::AlgebraicNumber(UPoly defining, Interval isolating) : p_(std::move(defining)), iv_(isolating) {
  if (p_.degree() < 1) throw Error(ErrorKind::InvalidArgument, "algebraic number needs a nonconstant polynomial");
  if (gcd(p_, p_.derivative()).degree() > 0)
    throw Error(ErrorKind::InvalidArgument, "defining polynomial " + p_.to_string() + " is not squarefree");
  if (iv_.lo >= iv_.hi || p_.sign_at(iv_.lo) == Sign::Zero || p_.sign_at(iv_.hi) == Sign::Zero ||
      count_real_roots_between(p_, iv_.lo, iv_.hi) != 1)
    throw Error(ErrorKind::InvalidArgument,
                "interval " + iv_.to_string() + " does not isolate a root of " + p_.to_string());
}

AlgebraicNumber AlgebraicNumber::from_rational(const Rational& q) {
  AlgebraicNumber a;
  a.p_ = UPoly(std::vector<Rational>{Rational(-q), Rational(1)}).primitive();
  a.iv_ = Interval(q - 1, q + 1);
  return a;
}

AlgebraicNumber AlgebraicNumber::refined() const {
  AlgebraicNumber a = *this;
  bisect_once(a.p_, a.iv_);
  return a;
}

AlgebraicNumber AlgebraicNumber::refined_to(const Rational& width) const {
  AlgebraicNumber a = *this;
  while (a.iv_.width() > width) bisect_once(a.p_, a.iv_);
  return a;
}

Sign AlgebraicNumber::sign_of(const UPoly& q_in) const {
  const UPoly q = rem(q_in, p_);
  if (q.is_zero()) return Sign::Zero;
  if (q.degree() == 0) return jacobi::sign_of(q.lc());
  // q vanishes at this root iff the common factor has a root in the interval.
  const UPoly g = gcd(p_, q);
  if (g.degree() > 0 && count_real_roots_between(g, iv_.lo, iv_.hi) == 1) return Sign::Zero;
  Interval iv = iv_;
  for (;;) {
    const Interval v = q.evaluate(iv);
    if (v.lo > 0) return Sign::Positive;
    if (v.hi < 0) return Sign::Negative;
    bisect_once(p_, iv);
  }
}

Sign AlgebraicNumber::compare(const Rational& q) const {
  if (q <= iv_.lo) return Sign::Positive;
  if (q >= iv_.hi) return Sign::Negative;
  return sign_of(UPoly(std::vector<Rational>{Rational(-q), Rational(1)}));
}

std::optional<Rational> AlgebraicNumber::as_rational() const {
  if (p_.degree() == 1) return Rational(-p_.coeff(0) / p_.coeff(1));
  // A rational root r/s of the primitive polynomial has s | lc; two such
  // rationals differ by at least 1/lc^2, so once the interval is narrower
  // the simplest rational inside is the only candidate.
  const UPoly prim = p_.primitive();
  const Rational lc = abs(prim.lc());
  const AlgebraicNumber a = refined_to(Rational(1) / (2 * lc * lc));
  const Rational cand = simplest_between(a.iv_.lo, a.iv_.hi);
  if (cand.get_den() <= lc.get_num() && prim.sign_at(cand) == Sign::Zero) return cand;
  return std::nullopt;
}

double AlgebraicNumber::approx() const {
  const AlgebraicNumber a = refined_to(Rational(1, 1 << 30) * Rational(1, 1 << 22));
  return a.iv_.midpoint().get_d();
}

std::string AlgebraicNumber::to_string() const {
  std::ostringstream os;
  os << "root of " << p_.to_string("t") << " in (" << jacobi::to_string(iv_.lo) << ", " << jacobi::to_string(iv_.hi)
     << ")";
  return os.str();
}

std::string coordinate_to_string(const Coordinate& c) {
  if (const auto* q = std::get_if<Rational>(&c)) return to_string(*q);
  return std::get<AlgebraicNumber>(c).to_string();
}

double coordinate_approx(const Coordinate& c) {
  if (const auto* q = std::get_if<Rational>(&c)) return q->get_d();
  return std::get<AlgebraicNumber>(c).approx();
}

}  // namespace jacobi
