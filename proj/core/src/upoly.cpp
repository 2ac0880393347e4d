#include "jacobi/upoly.hpp"

#include <algorithm>
#include <sstream>

#include "jacobi/errors.hpp"

namespace jacobi {

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly::UPoly(const Rational& c) {
  if (c != 0) c_.push_back(c);
}

UPoly UPoly::x() { return UPoly(std::vector<Rational>{Rational(0), Rational(1)}); }

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::from_poly(const Poly& p, Variable v) {
  std::vector<Rational> c(p.degree(v) + 1);
  for (const auto& t : p.terms()) {
    const auto d = t.mono.degree(v);
    if (t.mono.degree() != d)
      throw Error(ErrorKind::InvalidArgument, "polynomial " + p.to_string() + " is not univariate in " + v.name());
    c[d] = t.coeff;
  }
  return UPoly(std::move(c));
}

Poly UPoly::to_poly(Variable v) const {
  std::vector<Term> terms;
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (c_[k] != 0) terms.push_back({Monomial::of(v, static_cast<std::uint32_t>(k)), c_[k]});
  return Poly::from_terms(std::move(terms));
}

Rational UPoly::evaluate(const Rational& t) const {
  Rational acc(0);
  for (auto k = c_.size(); k-- > 0;) {
    acc *= t;
    acc += c_[k];
  }
  return acc;
}

Interval UPoly::evaluate(const Interval& iv) const {
  Interval acc(Rational(0));
  for (auto k = c_.size(); k-- > 0;) acc = acc * iv + Interval(c_[k]);
  return acc;
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return UPoly();
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<unsigned long>(k);
  return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
  if (c_.empty()) return *this;
  return scaled(Rational(1) / c_.back());
}

UPoly UPoly::primitive() const {
  if (c_.empty()) return *this;
  Integer g = 0, l = 1;
  for (const auto& q : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  }
  Rational k(l, g);
  k.canonicalize();
  if (c_.back() < 0) k = -k;
  return scaled(k);
}

UPoly UPoly::operator-() const { return scaled(Rational(-1)); }

UPoly UPoly::scaled(const Rational& k) const {
  if (k == 0) return UPoly();
  UPoly r = *this;
  for (auto& q : r.c_) q *= k;
  return r;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
  return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] -= b.c_[k];
  return UPoly(std::move(c));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(c));
}

std::string UPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto k = c_.size(); k-- > 0;) {
    if (c_[k] == 0) continue;
    const bool negative = c_[k] < 0;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const Rational m = abs(c_[k]);
    if (k == 0) {
      os << jacobi::to_string(m);
      continue;
    }
    if (m != 1) os << jacobi::to_string(m) << '*';
    os << var;
    if (k > 1) os << '^' << k;
  }
  return os.str();
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::InvalidArgument, "polynomial division by zero");
  if (a.degree() < b.degree()) return {UPoly(), a};
  std::vector<Rational> r = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  std::vector<Rational> q(r.size() - db);
  const Rational inv = Rational(1) / bc.back();
  for (auto k = r.size(); k-- > db;) {
    if (r[k] == 0) continue;
    const Rational f = r[k] * inv;
    q[k - db] = f;
    for (std::size_t i = 0; i <= db; ++i) r[k - db + i] -= f * bc[i];
  }
  r.resize(db);
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly rem(const UPoly& a, const UPoly& b) { return divmod(a, b).second; }

UPoly gcd(const UPoly& a_in, const UPoly& b_in) {
  UPoly a = a_in.primitive(), b = b_in.primitive();
  while (!b.is_zero()) {
    UPoly r = rem(a, b).primitive();
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

UPoly squarefree_part(const UPoly& p) {
  if (p.is_zero()) throw Error(ErrorKind::InvalidArgument, "squarefree part of the zero polynomial");
  if (p.degree() <= 0) return UPoly(Rational(1));
  const UPoly g = gcd(p, p.derivative());
  return divmod(p, g).first.primitive();
}

std::vector<std::pair<UPoly, unsigned>> squarefree_decomposition(const UPoly& p) {
  if (p.is_zero()) throw Error(ErrorKind::InvalidArgument, "squarefree decomposition of the zero polynomial");
  std::vector<std::pair<UPoly, unsigned>> out;
  if (p.degree() <= 0) return out;
  // Yun's algorithm.
  UPoly a = p.monic();
  UPoly b = a.derivative();
  UPoly c = gcd(a, b);
  UPoly w = divmod(a, c).first;
  UPoly y = divmod(b, c).first;
  UPoly z = y - w.derivative();
  unsigned i = 1;
  while (w.degree() > 0) {
    UPoly g = gcd(w, z);
    if (g.degree() > 0) out.emplace_back(g.primitive(), i);
    w = divmod(w, g).first;
    y = divmod(z, g).first;
    z = y - w.derivative();
    ++i;
  }
  return out;
}

}  // namespace jacobi
