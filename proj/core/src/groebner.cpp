#include <algorithm>
#include <map>
#include <set>

#include "jacobi/errors.hpp"
#include "jacobi/real_algebra.hpp"
#include "lex_ideal.hpp"

// Buchberger's algorithm over Q in lex order on dense exponent vectors.
// Pair selection follows the sugar strategy; useless pairs are discarded by
// the Gebauer-Moeller criteria.

namespace jacobi {

namespace {

using Exp = std::vector<std::uint32_t>;  // Exp[0] is the largest variable

struct LTerm {
  Exp e;
  Rational c;
};

// Terms sorted descending in lex order, no zero coefficients.
struct LPoly {
  std::vector<LTerm> t;
  std::uint32_t sugar = 0;

  bool zero() const { return t.empty(); }
  const Exp& lm() const { return t.front().e; }
};

bool lex_greater(const Exp& a, const Exp& b) { return a > b; }

std::uint32_t deg(const Exp& e) {
  std::uint32_t d = 0;
  for (auto x : e) d += x;
  return d;
}

bool divides(const Exp& a, const Exp& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exp lcm(const Exp& a, const Exp& b) {
  Exp r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

Exp sub(const Exp& a, const Exp& b) {
  Exp r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Exp add(const Exp& a, const Exp& b) {
  Exp r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

bool coprime(const Exp& a, const Exp& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) return false;
  return true;
}

struct Ring {
  std::vector<Variable> vars;
  std::map<std::uint32_t, std::size_t> index;  // variable id -> position

  explicit Ring(const std::vector<Variable>& v) : vars(v) {
    for (std::size_t i = 0; i < v.size(); ++i) index[v[i].id()] = i;
  }

  LPoly from(const Poly& p) const {
    LPoly r;
    for (const auto& term : p.terms()) {
      Exp e(vars.size(), 0);
      for (const auto& [id, k] : term.mono.entries()) {
        const auto it = index.find(id);
        if (it == index.end())
          throw Error(ErrorKind::InvalidArgument, "variable '" + Variable::from_id(id).name() +
                                                      "' is not in the elimination order");
        e[it->second] = k;
      }
      r.t.push_back({std::move(e), term.coeff});
    }
    std::sort(r.t.begin(), r.t.end(), [](const LTerm& a, const LTerm& b) { return lex_greater(a.e, b.e); });
    r.sugar = r.zero() ? 0 : deg(r.t.front().e);
    for (const auto& t : r.t) r.sugar = std::max(r.sugar, deg(t.e));
    return r;
  }

  Poly to(const LPoly& p) const {
    std::vector<Term> terms;
    for (const auto& t : p.t) {
      std::vector<Monomial::Entry> entries;
      for (std::size_t i = 0; i < vars.size(); ++i)
        if (t.e[i]) entries.emplace_back(vars[i].id(), t.e[i]);
      terms.push_back({Monomial(std::move(entries)), t.c});
    }
    return Poly::from_terms(std::move(terms));
  }
};

// Integer primitive part of a lex-monic polynomial, keeping the lex leading
// coefficient positive.
Poly lex_primitive(const Poly& p) { return p.scaled(Rational(1) / abs(p.content())); }

void make_monic(LPoly& p) {
  if (p.zero()) return;
  const Rational inv = Rational(1) / p.t.front().c;
  for (auto& t : p.t) t.c *= inv;
}

// a - c * x^e * b
void sub_mul(LPoly& a, const Rational& c, const Exp& e, const LPoly& b) {
  std::vector<LTerm> out;
  out.reserve(a.t.size() + b.t.size());
  std::size_t i = 0, j = 0;
  while (i < a.t.size() || j < b.t.size()) {
    if (j == b.t.size()) {
      out.push_back(std::move(a.t[i++]));
      continue;
    }
    Exp be = add(b.t[j].e, e);
    if (i == a.t.size() || lex_greater(be, a.t[i].e)) {
      out.push_back({std::move(be), -c * b.t[j].c});
      ++j;
    } else if (be == a.t[i].e) {
      Rational v = a.t[i].c - c * b.t[j].c;
      if (v != 0) out.push_back({std::move(be), std::move(v)});
      ++i;
      ++j;
    } else {
      out.push_back(std::move(a.t[i++]));
    }
  }
  a.t = std::move(out);
  a.sugar = std::max(a.sugar, b.sugar + deg(e));
}

// Full reduction of p by the basis (which holds monic polynomials).
LPoly reduce(LPoly p, const std::vector<LPoly>& basis) {
  LPoly r;
  r.sugar = p.sugar;
  while (!p.zero()) {
    const LTerm& lt = p.t.front();
    const LPoly* red = nullptr;
    for (const auto& g : basis)
      if (!g.zero() && divides(g.lm(), lt.e)) {
        red = &g;
        break;
      }
    if (red) {
      const Rational c = lt.c;
      const Exp e = sub(lt.e, red->lm());
      sub_mul(p, c, e, *red);
    } else {
      r.t.push_back(std::move(p.t.front()));
      p.t.erase(p.t.begin());
    }
  }
  r.sugar = std::max(r.sugar, p.sugar);
  return r;
}

struct Pair {
  std::size_t i, j;
  Exp lcm;
  std::uint32_t sugar;
};

std::vector<LPoly> buchberger(std::vector<LPoly> input) {
  std::vector<LPoly> g;
  std::vector<bool> alive;
  std::vector<Pair> pairs;

  auto spoly = [&](const Pair& pr) {
    LPoly s = g[pr.i];
    s.t.clear();
    // x^(l - lm_i) g_i - x^(l - lm_j) g_j
    LPoly a;
    a.sugar = 0;
    sub_mul(a, Rational(-1), sub(pr.lcm, g[pr.i].lm()), g[pr.i]);
    sub_mul(a, Rational(1), sub(pr.lcm, g[pr.j].lm()), g[pr.j]);
    return a;
  };

  // Gebauer-Moeller update with a new basis element h.
  auto update = [&](LPoly h) {
    make_monic(h);
    const std::size_t k = g.size();
    g.push_back(std::move(h));
    alive.push_back(true);
    const Exp& hk = g[k].lm();
    std::vector<Pair> fresh;
    for (std::size_t i = 0; i < k; ++i) {
      if (!alive[i]) continue;
      const Exp l = lcm(g[i].lm(), hk);
      const std::uint32_t s =
          std::max(g[i].sugar + deg(sub(l, g[i].lm())), g[k].sugar + deg(sub(l, hk)));
      fresh.push_back({i, k, l, s});
    }
    // Chain criterion among the new pairs (keep the first of equal lcms,
    // preferring coprime ones so the product criterion can drop the group).
    std::vector<Pair> kept;
    for (std::size_t a = 0; a < fresh.size(); ++a) {
      bool drop = false;
      for (std::size_t b = 0; b < fresh.size() && !drop; ++b)
        if (a != b && divides(fresh[b].lcm, fresh[a].lcm) && fresh[b].lcm != fresh[a].lcm) drop = true;
      if (!drop) kept.push_back(fresh[a]);
    }
    std::vector<Pair> unique;
    for (const auto& p : kept) {
      auto same = std::find_if(unique.begin(), unique.end(), [&](const Pair& q) { return q.lcm == p.lcm; });
      if (same == unique.end()) {
        unique.push_back(p);
      } else if (coprime(g[p.i].lm(), hk)) {
        *same = p;
      }
    }
    std::vector<Pair> accepted;
    for (const auto& p : unique)
      if (!coprime(g[p.i].lm(), hk)) accepted.push_back(p);
    // Old pairs whose lcm is divisible by lm(h) and differs from both new lcms.
    std::vector<Pair> old;
    for (const auto& p : pairs) {
      const bool redundant = divides(hk, p.lcm) && lcm(g[p.i].lm(), hk) != p.lcm && lcm(g[p.j].lm(), hk) != p.lcm;
      if (!redundant) old.push_back(p);
    }
    pairs = std::move(old);
    pairs.insert(pairs.end(), accepted.begin(), accepted.end());
    // Basis elements whose leading monomial is a multiple of lm(h) are superfluous.
    for (std::size_t i = 0; i < k; ++i)
      if (alive[i] && divides(hk, g[i].lm())) alive[i] = false;
  };

  auto live_basis = [&]() {
    std::vector<LPoly> b;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (alive[i]) b.push_back(g[i]);
    return b;
  };

  std::sort(input.begin(), input.end(), [](const LPoly& a, const LPoly& b) { return lex_greater(b.lm(), a.lm()); });
  for (auto& f : input) {
    LPoly r = reduce(std::move(f), live_basis());
    if (!r.zero()) update(std::move(r));
  }
  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
      if (a.sugar != b.sugar) return a.sugar < b.sugar;
      return lex_greater(b.lcm, a.lcm);
    });
    const Pair pr = *best;
    pairs.erase(best);
    LPoly s = spoly(pr);
    s.sugar = pr.sugar;
    LPoly r = reduce(std::move(s), g);
    if (r.zero()) continue;
    if (r.t.front().e == Exp(r.t.front().e.size(), 0)) {
      // The ideal is the whole ring.
      make_monic(r);
      return {r};
    }
    update(std::move(r));
  }

  // Minimal basis then interreduction.
  std::vector<LPoly> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!alive[i]) continue;
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j)
      if (j != i && alive[j] && divides(g[j].lm(), g[i].lm()) && (g[j].lm() != g[i].lm() || j < i))
        redundant = true;
    if (!redundant) minimal.push_back(g[i]);
  }
  std::vector<LPoly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<LPoly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    LPoly head;
    head.t.push_back(minimal[i].t.front());
    LPoly tail = minimal[i];
    tail.t.erase(tail.t.begin());
    LPoly rt = reduce(std::move(tail), others);
    head.t.insert(head.t.end(), rt.t.begin(), rt.t.end());
    make_monic(head);
    reduced.push_back(std::move(head));
  }
  std::sort(reduced.begin(), reduced.end(), [](const LPoly& a, const LPoly& b) { return lex_greater(b.lm(), a.lm()); });
  return reduced;
}

}  // namespace

std::vector<Poly> lex_groebner_basis(const std::vector<Poly>& polys, const std::vector<Variable>& lex_vars) {
  const Ring ring(lex_vars);
  std::vector<LPoly> input;
  for (const auto& p : polys)
    if (!p.is_zero()) input.push_back(ring.from(p));
  std::vector<Poly> out;
  if (input.empty()) return out;
  for (const auto& g : buchberger(std::move(input))) out.push_back(lex_primitive(ring.to(g)));
  return out;
}

Poly normal_form(const Poly& p, const std::vector<Poly>& basis, const std::vector<Variable>& lex_vars) {
  const Ring ring(lex_vars);
  std::vector<LPoly> b;
  for (const auto& g : basis) {
    LPoly l = ring.from(g);
    make_monic(l);
    b.push_back(std::move(l));
  }
  return ring.to(reduce(ring.from(p), b));
}

// ---- quotient ring ------------------------------------------------------------------

namespace detail {

namespace {

LPoly mul(const LPoly& a, const LPoly& b) {
  LPoly r;
  for (const auto& t : a.t) sub_mul(r, -t.c, t.e, b);
  r.sugar = a.sugar + b.sugar;
  return r;
}

// Row echelon form that remembers how each row was combined from the inputs.
class Tracker {
 public:
  explicit Tracker(std::size_t dim) : dim_(dim) {}

  // Reduces v (input number `index`); returns the combination of inputs that
  // vanishes if v is dependent, nullopt otherwise (then v is stored).
  std::optional<std::vector<Rational>> add(std::vector<Rational> v, std::size_t index) {
    std::vector<Rational> comb(index + 1);
    comb[index] = 1;
    eliminate(v, comb);
    std::size_t pivot = 0;
    while (pivot < dim_ && v[pivot] == 0) ++pivot;
    if (pivot == dim_) return comb;
    const Rational inv = Rational(1) / v[pivot];
    for (auto& x : v) x *= inv;
    for (auto& x : comb) x *= inv;
    rows_.push_back({std::move(v), std::move(comb), pivot});
    return std::nullopt;
  }

  // Writes v as a combination of the stored inputs; nullopt if outside the span.
  std::optional<std::vector<Rational>> express(std::vector<Rational> v) const {
    std::vector<Rational> comb;
    eliminate(v, comb);
    for (const auto& x : v)
      if (x != 0) return std::nullopt;
    for (auto& x : comb) x = -x;
    return comb;
  }

 private:
  struct Row {
    std::vector<Rational> v, comb;
    std::size_t pivot;
  };

  void eliminate(std::vector<Rational>& v, std::vector<Rational>& comb) const {
    for (const auto& r : rows_) {
      if (v[r.pivot] == 0) continue;
      const Rational f = v[r.pivot];
      for (std::size_t i = r.pivot; i < dim_; ++i)
        if (r.v[i] != 0) v[i] -= f * r.v[i];
      if (comb.size() < r.comb.size()) comb.resize(r.comb.size());
      for (std::size_t i = 0; i < r.comb.size(); ++i)
        if (r.comb[i] != 0) comb[i] -= f * r.comb[i];
    }
  }

  std::size_t dim_;
  std::vector<Row> rows_;
};

}  // namespace

struct LexIdeal::Impl {
  Ring ring;
  std::vector<LPoly> gb;  // monic
  std::vector<Poly> basis;
  std::map<Exp, std::size_t> standard;  // standard monomial -> coordinate index
  bool zero_dim = false;

  explicit Impl(const std::vector<Variable>& vars) : ring(vars) {}

  std::vector<Rational> coords(const LPoly& nf) const {
    std::vector<Rational> v(standard.size());
    for (const auto& t : nf.t) v[standard.at(t.e)] = t.c;
    return v;
  }

  LPoly nf(const LPoly& p) const { return reduce(p, gb); }

  // Powers t^0, t^1, ... until dependence; fills the tracker.
  UPoly power_dependence(const LPoly& f, Tracker& tr) const {
    LPoly cur;
    cur.t.push_back({Exp(ring.vars.size(), 0), Rational(1)});
    cur = nf(cur);
    for (std::size_t k = 0;; ++k) {
      if (auto dep = tr.add(coords(cur), k)) return UPoly(std::move(*dep)).primitive();
      cur = nf(mul(cur, f));
    }
  }
};

LexIdeal::LexIdeal(const std::vector<Poly>& generators, const std::vector<Variable>& lex_vars)
    : impl_(std::make_unique<Impl>(lex_vars)) {
  auto& m = *impl_;
  std::vector<LPoly> input;
  for (const auto& p : generators)
    if (!p.is_zero()) input.push_back(m.ring.from(p));
  if (!input.empty()) m.gb = buchberger(std::move(input));
  for (const auto& g : m.gb) m.basis.push_back(lex_primitive(m.ring.to(g)));
  if (is_unit()) return;

  const std::size_t n = lex_vars.size();
  std::vector<std::uint32_t> bound(n, 0);
  for (const auto& g : m.gb) {
    const Exp& e = g.lm();
    std::size_t nz = 0, at = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (e[i]) ++nz, at = i;
    if (nz == 1 && (bound[at] == 0 || e[at] < bound[at])) bound[at] = e[at];
  }
  m.zero_dim = std::all_of(bound.begin(), bound.end(), [](std::uint32_t b) { return b > 0; });
  if (!m.zero_dim) return;
  Exp e(n, 0);
  std::size_t index = 0;
  for (;;) {
    const bool reducible = std::any_of(m.gb.begin(), m.gb.end(), [&](const LPoly& g) { return divides(g.lm(), e); });
    if (!reducible) m.standard.emplace(e, index++);
    std::size_t i = 0;
    while (i < n && ++e[i] == bound[i]) e[i++] = 0;
    if (i == n) break;
  }
}

LexIdeal::~LexIdeal() = default;
LexIdeal::LexIdeal(LexIdeal&&) noexcept = default;
LexIdeal& LexIdeal::operator=(LexIdeal&&) noexcept = default;

const std::vector<Poly>& LexIdeal::basis() const { return impl_->basis; }

bool LexIdeal::is_unit() const {
  return impl_->basis.size() == 1 && impl_->basis.front().is_constant();
}

bool LexIdeal::zero_dimensional() const { return impl_->zero_dim; }

std::size_t LexIdeal::quotient_dimension() const { return impl_->standard.size(); }

UPoly LexIdeal::min_poly(const Poly& f) const {
  Tracker tr(quotient_dimension());
  return impl_->power_dependence(impl_->nf(impl_->ring.from(f)), tr);
}

std::optional<LexIdeal::Separation> LexIdeal::separate(const Poly& t, const std::vector<Poly>& targets) const {
  const std::size_t dim = quotient_dimension();
  Tracker tr(dim);
  Separation s;
  s.g = impl_->power_dependence(impl_->nf(impl_->ring.from(t)), tr);
  if (static_cast<std::size_t>(s.g.degree()) != dim) return std::nullopt;
  for (const auto& x : targets) {
    auto comb = tr.express(impl_->coords(impl_->nf(impl_->ring.from(x))));
    if (!comb) return std::nullopt;
    s.h.push_back(UPoly(std::move(*comb)));
  }
  return s;
}

}  // namespace detail

}  // namespace jacobi
