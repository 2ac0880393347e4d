#include "jacobi/charpoly.hpp"

namespace jacobi {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Stable: return "stable";
    case Verdict::Unstable: return "unstable";
    case Verdict::Boundary: return "boundary";
  }
  return "unknown";
}

Verdict verdict_from_signs(Sign a_n, const std::vector<Sign>& deltas) {
  bool negative = a_n == Sign::Negative, zero = a_n == Sign::Zero;
  for (Sign s : deltas) {
    negative = negative || s == Sign::Negative;
    zero = zero || s == Sign::Zero;
  }
  if (negative) return Verdict::Unstable;
  return zero ? Verdict::Boundary : Verdict::Stable;
}

Verdict hurwitz_verdict(const CharPoly<Rational>& p) {
  const auto hs = hurwitz_sequence(p);
  std::vector<Sign> signs;
  for (const auto& d : hs.delta) signs.push_back(sign_of(d));
  return verdict_from_signs(sign_of(hs.a_n), signs);
}

std::vector<Poly> product_form_coefficients(const std::vector<Variable>& b, const std::vector<Variable>& c) {
  if (b.size() != c.size()) throw Error(ErrorKind::InvalidArgument, "product form needs as many b_j as c_j");
  std::vector<Poly> acc{Poly(1)};
  for (std::size_t j = 0; j < b.size(); ++j) {
    const Poly quad[3] = {Poly(1), Poly(b[j]), Poly(c[j])};
    std::vector<Poly> next(acc.size() + 2);
    for (std::size_t i = 0; i < acc.size(); ++i)
      for (std::size_t k = 0; k < 3; ++k) next[i + k] += acc[i] * quad[k];
    acc = std::move(next);
  }
  return acc;
}

ProductFormConstraints product_form_constraints(const CharPoly<RationalFunction>& p, const std::vector<Variable>& b,
                                                const std::vector<Variable>& c) {
  const std::size_t n = p.degree();
  if (n % 2 != 0)
    throw Error(ErrorKind::OddDegree, "product form needs an even degree, got " + std::to_string(n));
  if (b.size() != n / 2 || c.size() != n / 2)
    throw Error(ErrorKind::InvalidArgument, "product form needs m = n/2 variables b_j and c_j");
  ProductFormConstraints pf;
  pf.m = n / 2;
  pf.b = b;
  pf.c = c;
  const auto prod = product_form_coefficients(b, c);
  for (std::size_t i = 1; i <= n; ++i) {
    const RationalFunction diff = p.coeffs[i] - RationalFunction(prod[i]);
    pf.equations.push_back(diff.numer());
  }
  for (std::size_t j = 0; j < pf.m; ++j) pf.inequalities.push_back(Poly(c[j]).scaled(2) - Poly(b[j]).pow(2));
  return pf;
}

ProductFormConstraints product_form_constraints(const CharPoly<RationalFunction>& p) {
  std::vector<Variable> b, c;
  for (std::size_t j = 1; j <= p.degree() / 2; ++j) {
    b.push_back(Variable::named("b" + std::to_string(j)));
    c.push_back(Variable::named("c" + std::to_string(j)));
  }
  return product_form_constraints(p, b, c);
}

}  // namespace jacobi
