#include <algorithm>

#include "jacobi/poly.hpp"

namespace jacobi {

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return Poly();
  if (b.is_constant()) return a.scaled(Rational(1) / b.leading_coeff());
  const Term& lead = b.leading();
  Poly remainder = a;
  std::vector<Term> quotient;
  while (!remainder.is_zero()) {
    const Term& r = remainder.leading();
    // Any exact quotient keeps the leading term of the remainder divisible.
    if (!lead.mono.divides(r.mono)) return std::nullopt;
    Term t{r.mono.quotient(lead.mono), r.coeff / lead.coeff};
    remainder -= Poly::monomial(t.mono, t.coeff) * b;
    quotient.push_back(std::move(t));
  }
  return Poly::from_terms(std::move(quotient));
}

Poly pseudo_remainder(const Poly& a, const Poly& b, Variable v) {
  auto r = a.coefficients(v);
  const auto bc = b.coefficients(v);
  const std::size_t db = bc.size() - 1;
  if (r.size() < bc.size()) return a;
  const Poly& lc = bc.back();
  std::size_t steps = 0;
  const std::size_t expected = r.size() - db;
  while (!r.empty() && r.size() - 1 >= db) {
    const std::size_t dr = r.size() - 1;
    const Poly lr = r.back();
    for (auto& c : r) c = c * lc;
    for (std::size_t i = 0; i <= db; ++i) r[i + dr - db] -= lr * bc[i];
    r.pop_back();
    ++steps;
    while (!r.empty() && r.back().is_zero()) r.pop_back();
  }
  Poly rem = Poly::from_coefficients(v, r);
  if (steps < expected) rem = rem * lc.pow(static_cast<unsigned>(expected - steps));
  return rem;
}

namespace {

Poly normalize_gcd(const Poly& g) { return g.is_zero() ? g : g.primitive(); }

Poly gcd_of_list(const std::vector<Poly>& polys) {
  Poly g;
  for (const auto& p : polys) {
    if (p.is_zero()) continue;
    g = gcd(g, p);
    if (g.is_constant()) return Poly(1);
  }
  return g;
}

}  // namespace

Poly content_in(const Poly& p, Variable v) { return gcd_of_list(p.coefficients(v)); }

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return normalize_gcd(b);
  if (b.is_zero()) return normalize_gcd(a);
  if (a.is_constant() || b.is_constant()) return Poly(1);
  if (auto q = divide_exact(a, b)) return normalize_gcd(b);
  if (auto q = divide_exact(b, a)) return normalize_gcd(a);

  const auto va = a.variables();
  const auto vb = b.variables();
  // A variable present in only one argument cannot occur in the gcd, which
  // therefore divides the content with respect to it.
  for (auto w : va)
    if (std::find(vb.begin(), vb.end(), w) == vb.end()) return gcd(content_in(a, w), b);
  for (auto w : vb)
    if (std::find(va.begin(), va.end(), w) == va.end()) return gcd(a, content_in(b, w));

  const Variable v = va.front();
  const Poly ca = content_in(a, v);
  const Poly cb = content_in(b, v);
  Poly r0 = *divide_exact(a, ca);
  Poly r1 = *divide_exact(b, cb);
  const Poly gc = gcd(ca, cb);
  if (r0.degree(v) < r1.degree(v)) std::swap(r0, r1);
  // Primitive pseudo-remainder sequence.
  while (true) {
    Poly r = pseudo_remainder(r0, r1, v);
    if (r.is_zero()) break;
    if (r.degree(v) == 0) {
      r1 = Poly(1);
      break;
    }
    r0 = std::move(r1);
    r1 = divide_exact(r, content_in(r, v))->primitive();
  }
  return normalize_gcd(gc * r1);
}

}  // namespace jacobi
