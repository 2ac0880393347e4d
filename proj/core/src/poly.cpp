#include "jacobi/poly.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "jacobi/errors.hpp"

namespace jacobi {

// ---- Monomial ---------------------------------------------------------------

Monomial::Monomial(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end());
  for (const auto& [id, e] : entries) {
    if (e == 0) continue;
    if (!entries_.empty() && entries_.back().first == id) {
      entries_.back().second += e;
    } else {
      entries_.emplace_back(id, e);
    }
    degree_ += e;
  }
}

Monomial Monomial::of(Variable v, std::uint32_t exponent) {
  Monomial m;
  if (exponent > 0) {
    m.entries_.emplace_back(v.id(), exponent);
    m.degree_ = exponent;
  }
  return m;
}

std::uint32_t Monomial::degree(Variable v) const {
  for (const auto& [id, e] : entries_) {
    if (id == v.id()) return e;
    if (id > v.id()) break;
  }
  return 0;
}

bool Monomial::divides(const Monomial& other) const {
  std::size_t j = 0;
  for (const auto& [id, e] : entries_) {
    while (j < other.entries_.size() && other.entries_[j].first < id) ++j;
    if (j == other.entries_.size() || other.entries_[j].first != id || other.entries_[j].second < e) return false;
  }
  return true;
}

Monomial Monomial::quotient(const Monomial& divisor) const {
  Monomial q;
  std::size_t j = 0;
  for (const auto& [id, e] : entries_) {
    std::uint32_t d = 0;
    while (j < divisor.entries_.size() && divisor.entries_[j].first < id) ++j;
    if (j < divisor.entries_.size() && divisor.entries_[j].first == id) d = divisor.entries_[j].second;
    if (e > d) {
      q.entries_.emplace_back(id, e - d);
      q.degree_ += e - d;
    }
  }
  return q;
}

Monomial Monomial::without(Variable v) const {
  Monomial q;
  for (const auto& entry : entries_) {
    if (entry.first == v.id()) continue;
    q.entries_.push_back(entry);
    q.degree_ += entry.second;
  }
  return q;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  m.entries_.reserve(a.entries_.size() + b.entries_.size());
  std::size_t i = 0, j = 0;
  while (i < a.entries_.size() || j < b.entries_.size()) {
    if (j == b.entries_.size() || (i < a.entries_.size() && a.entries_[i].first < b.entries_[j].first)) {
      m.entries_.push_back(a.entries_[i++]);
    } else if (i == a.entries_.size() || b.entries_[j].first < a.entries_[i].first) {
      m.entries_.push_back(b.entries_[j++]);
    } else {
      m.entries_.emplace_back(a.entries_[i].first, a.entries_[i].second + b.entries_[j].second);
      ++i;
      ++j;
    }
  }
  m.degree_ = a.degree_ + b.degree_;
  return m;
}

std::size_t Monomial::hash() const noexcept {
  std::size_t h = degree_;
  for (const auto& [id, e] : entries_) h = h * 1000003u ^ (static_cast<std::size_t>(id) << 16 ^ e);
  return h;
}

int grlex_compare(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  const auto& x = a.entries();
  const auto& y = b.entries();
  std::size_t i = 0;
  for (; i < x.size() && i < y.size(); ++i) {
    if (x[i].first != y[i].first) return x[i].first < y[i].first ? 1 : -1;
    if (x[i].second != y[i].second) return x[i].second > y[i].second ? 1 : -1;
  }
  if (i < x.size()) return 1;
  if (i < y.size()) return -1;
  return 0;
}

// ---- Poly -------------------------------------------------------------------

Poly::Poly(const Rational& c) {
  if (c != 0) terms_.push_back({Monomial(), c});
}

Poly::Poly(Variable v) { terms_.push_back({Monomial::of(v), Rational(1)}); }

Poly var(Variable v) { return Poly(v); }
Poly var(std::string_view name) { return Poly(Variable::named(name)); }

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return grlex_compare(a.mono, b.mono) > 0; });
  Poly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  return p;
}

Poly Poly::monomial(const Monomial& m, const Rational& c) {
  Poly p;
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

bool Poly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().mono.is_one());
}

Rational Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
  return Rational(0);
}

std::uint32_t Poly::total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }

std::uint32_t Poly::degree(Variable v) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree(v));
  return d;
}

bool Poly::contains(Variable v) const {
  return std::any_of(terms_.begin(), terms_.end(), [v](const Term& t) { return t.mono.degree(v) > 0; });
}

std::vector<Variable> Poly::variables() const {
  std::vector<std::uint32_t> ids;
  for (const auto& t : terms_)
    for (const auto& e : t.mono.entries()) ids.push_back(e.first);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::vector<Variable> out;
  out.reserve(ids.size());
  for (auto id : ids) out.push_back(Variable::from_id(id));
  return out;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

namespace {

std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int cmp;
    if (i == a.size()) cmp = -1;
    else if (j == b.size()) cmp = 1;
    else cmp = grlex_compare(a[i].mono, b[j].mono);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back(b[j++]);
      if (subtract) out.back().coeff = -out.back().coeff;
    } else {
      Rational c = subtract ? Rational(a[i].coeff - b[j].coeff) : Rational(a[i].coeff + b[j].coeff);
      if (c != 0) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& other) {
  if (other.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, other.terms_, false);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  if (other.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, other.terms_, true);
  return *this;
}

Poly Poly::scaled(const Rational& c) const {
  if (c == 0) return Poly();
  Poly p = *this;
  for (auto& t : p.terms_) t.coeff *= c;
  return p;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  if (b.terms_.size() == 1 && b.terms_.front().mono.is_one()) return a.scaled(b.terms_.front().coeff);
  if (a.terms_.size() == 1 && a.terms_.front().mono.is_one()) return b.scaled(a.terms_.front().coeff);
  std::map<Monomial, Rational, GrlexGreater> acc;
  Rational prod;
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      prod = s.coeff * t.coeff;
      auto [it, inserted] = acc.try_emplace(s.mono * t.mono, prod);
      if (!inserted) it->second += prod;
    }
  }
  Poly p;
  p.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) p.terms_.push_back({m, c});
  return p;
}

Poly& Poly::operator*=(const Poly& other) { return *this = *this * other; }

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

Poly Poly::pow(unsigned e) const {
  Poly result(1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

Poly Poly::derivative(Variable v) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    const auto d = t.mono.degree(v);
    if (d == 0) continue;
    Monomial m = t.mono.quotient(Monomial::of(v));
    out.push_back({std::move(m), t.coeff * d});
  }
  return from_terms(std::move(out));
}

namespace {

Rational rational_pow(const Rational& q, std::uint32_t e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), e);
  return r;
}

const Rational* find_binding(const Assignment& point, std::uint32_t id) {
  auto it = point.find(Variable::from_id(id));
  return it == point.end() ? nullptr : &it->second;
}

const std::string& variable_name(std::uint32_t id) { return Variable::from_id(id).name(); }

}  // namespace

Rational Poly::evaluate(const Assignment& point) const {
  Rational sum(0);
  for (const auto& t : terms_) {
    Rational term = t.coeff;
    for (const auto& [id, e] : t.mono.entries()) {
      const Rational* value = find_binding(point, id);
      if (value == nullptr)
        throw Error(ErrorKind::UnboundVariable, "variable '" + variable_name(id) + "' is not bound");
      term *= rational_pow(*value, e);
    }
    sum += term;
  }
  return sum;
}

Poly Poly::substitute(const Assignment& point) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    std::vector<Monomial::Entry> kept;
    for (const auto& [id, e] : t.mono.entries()) {
      if (const Rational* value = find_binding(point, id)) {
        c *= rational_pow(*value, e);
      } else {
        kept.emplace_back(id, e);
      }
    }
    if (c != 0) out.push_back({Monomial(std::move(kept)), std::move(c)});
  }
  return from_terms(std::move(out));
}

Poly Poly::substitute(Variable v, const Poly& value) const {
  const auto coeffs = coefficients(v);
  Poly result;
  for (auto k = coeffs.size(); k-- > 0;) result = result * value + coeffs[k];
  return result;
}

std::vector<Poly> Poly::coefficients(Variable v) const {
  std::vector<std::vector<Term>> buckets(degree(v) + 1);
  for (const auto& t : terms_) buckets[t.mono.degree(v)].push_back({t.mono.without(v), t.coeff});
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) {
    Poly p;
    p.terms_ = std::move(b);  // removing one variable preserves the relative grlex order
    std::stable_sort(p.terms_.begin(), p.terms_.end(),
                     [](const Term& a, const Term& c) { return grlex_compare(a.mono, c.mono) > 0; });
    out.push_back(std::move(p));
  }
  return out;
}

Poly Poly::from_coefficients(Variable v, const std::vector<Poly>& coeffs) {
  std::vector<Term> out;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    for (const auto& t : coeffs[k].terms_)
      out.push_back({t.mono * Monomial::of(v, static_cast<std::uint32_t>(k)), t.coeff});
  return from_terms(std::move(out));
}

Poly Poly::leading_coeff_in(Variable v) const {
  if (is_zero()) return Poly();
  return coefficients(v).back();
}

Rational Poly::content() const {
  if (terms_.empty()) return Rational(0);
  Integer g = 0, l = 1;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  Rational c(g, l);
  c.canonicalize();
  if (leading_coeff() < 0) c = -c;
  return c;
}

Poly Poly::primitive() const {
  if (terms_.empty()) return *this;
  const Rational c = content();
  Poly p = *this;
  for (auto& t : p.terms_) t.coeff /= c;
  return p;
}

Poly Poly::monic() const {
  if (terms_.empty()) return *this;
  const Rational c = leading_coeff();
  Poly p = *this;
  for (auto& t : p.terms_) t.coeff /= c;
  return p;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    const bool negative = t.coeff < 0;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const Rational magnitude = abs(t.coeff);
    const bool unit = magnitude == 1;
    if (t.mono.is_one()) {
      os << jacobi::to_string(magnitude);
      continue;
    }
    if (!unit) os << jacobi::to_string(magnitude) << '*';
    bool first_factor = true;
    for (const auto& [id, e] : t.mono.entries()) {
      if (!first_factor) os << '*';
      first_factor = false;
      os << variable_name(id);
      if (e > 1) os << '^' << e;
    }
  }
  return os.str();
}

std::size_t Poly::hash() const noexcept {
  std::size_t h = terms_.size();
  for (const auto& t : terms_) h = h * 31u ^ (t.mono.hash() + 0x9e3779b9u * hash_value(t.coeff));
  return h;
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

}  // namespace jacobi
