#include <algorithm>
#include <sstream>

#include "jacobi/charpoly.hpp"
#include "jacobi/errors.hpp"
#include "jacobi/real_algebra.hpp"
#include "lex_ideal.hpp"

namespace jacobi {

namespace {

constexpr std::size_t kMaxVariables = 4;
constexpr const char* kSeparatingName = "_t";

std::vector<Variable> reversed(const std::vector<Variable>& order) { return {order.rbegin(), order.rend()}; }

Variable main_variable(const Poly& p, const std::vector<Variable>& order) {
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (p.contains(*it)) return *it;
  throw Error(ErrorKind::InvalidArgument, "constant polynomial in a triangular chain");
}

struct ShapeResult {
  std::shared_ptr<ShapeForm> shape;
  Poly t;               // separating element in the original variables
  bool t_is_first = false;  // t is order[0] itself
};

// Rational univariate representation of the radical of <eqs>. Returns a null
// shape for an inconsistent system.
ShapeResult shape_solve(const std::vector<Poly>& eqs, const std::vector<Variable>& order) {
  const auto lex = reversed(order);
  detail::LexIdeal ideal(eqs, lex);
  ShapeResult res;
  if (ideal.is_unit()) return res;
  if (!ideal.zero_dimensional())
    throw Error(ErrorKind::NonIsolatedFixedPoints, "the system has a positive-dimensional solution set");

  // Seidenberg: adjoining the squarefree parts of the eliminants gives the radical.
  std::vector<Poly> gens = ideal.basis();
  bool extended = false;
  for (const auto& v : order) {
    const UPoly m = ideal.min_poly(Poly(v));
    const UPoly sf = squarefree_part(m);
    if (sf.degree() < m.degree()) {
      gens.push_back(sf.to_poly(v));
      extended = true;
    }
  }
  detail::LexIdeal radical = extended ? detail::LexIdeal(gens, lex) : std::move(ideal);
  if (extended) ideal = detail::LexIdeal(eqs, lex);

  std::vector<Poly> targets;
  for (const auto& v : order) targets.push_back(Poly(v));
  std::optional<detail::LexIdeal::Separation> sep;
  for (long k = 0; !sep; ++k) {
    Poly t;
    if (k == 0) {
      t = Poly(order.front());
    } else {
      Rational w = 1;
      for (const auto& v : order) {
        t += Poly(v).scaled(w);
        w *= k;
      }
    }
    sep = radical.separate(t, targets);
    if (sep) {
      res.t = t;
      res.t_is_first = k == 0;
    }
  }

  auto shape = std::make_shared<ShapeForm>();
  shape->vars = order;
  shape->g = sep->g;
  shape->h = sep->h;
  for (const auto& v : order) shape->coordinate_minpoly.push_back(radical.min_poly(Poly(v)));
  shape->multiplicity_poly = (extended ? ideal : radical).min_poly(res.t);
  res.shape = std::move(shape);
  return res;
}

// Drops the separating variable of a shape chain from a solved shape.
void hide_separating(ShapeForm& s) {
  for (std::size_t i = 0; i < s.vars.size(); ++i) {
    if (s.vars[i].name() != kSeparatingName) continue;
    s.vars.erase(s.vars.begin() + static_cast<long>(i));
    s.h.erase(s.h.begin() + static_cast<long>(i));
    s.coordinate_minpoly.erase(s.coordinate_minpoly.begin() + static_cast<long>(i));
    return;
  }
}

std::vector<RealSolutionBox> boxes_of(const std::shared_ptr<const ShapeForm>& shape) {
  std::vector<RealSolutionBox> out;
  if (!shape) return out;
  const UPoly g = shape->g.primitive();
  for (const auto& r : isolate_real_roots(g)) out.emplace_back(shape, AlgebraicNumber(g, r.interval));
  return out;
}

// q(h_1(t), ..., h_n(t)) mod g.
UPoly compose_mod(const Poly& q, const ShapeForm& s) {
  std::map<std::uint32_t, std::size_t> index;
  for (std::size_t i = 0; i < s.vars.size(); ++i) index[s.vars[i].id()] = i;
  std::map<std::pair<std::size_t, std::uint32_t>, UPoly> powers;
  auto power = [&](std::size_t i, std::uint32_t e) -> const UPoly& {
    auto key = std::make_pair(i, e);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    UPoly r(Rational(1));
    for (std::uint32_t k = 0; k < e; ++k) r = rem(r * s.h[i], s.g);
    return powers.emplace(key, r).first->second;
  };
  UPoly acc;
  for (const auto& term : q.terms()) {
    UPoly m(term.coeff);
    for (const auto& [id, e] : term.mono.entries()) {
      const auto it = index.find(id);
      if (it == index.end())
        throw Error(ErrorKind::UnboundVariable, "variable '" + Variable::from_id(id).name() + "' is not solved for");
      m = rem(m * power(it->second, e), s.g);
    }
    acc = acc + m;
  }
  return rem(acc, s.g);
}

}  // namespace

std::string TriangularSet::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < chain.size(); ++i) s += (i ? ", " : "") + chain[i].to_string();
  return s + "}";
}

std::vector<TriangularSet> triangularize(const std::vector<Poly>& eqs, const std::vector<Variable>& order) {
  if (order.size() > kMaxVariables)
    throw Error(ErrorKind::UnsupportedDimension,
                std::to_string(order.size()) + " variables; at most " + std::to_string(kMaxVariables) + " are supported");
  const auto lex = reversed(order);
  const detail::LexIdeal ideal(eqs, lex);
  if (ideal.is_unit()) return {};
  if (!ideal.zero_dimensional())
    throw Error(ErrorKind::NonIsolatedFixedPoints, "the system has a positive-dimensional solution set");

  TriangularSet ts;
  if (ideal.basis().size() == order.size()) {
    // One pure-power leading monomial per variable: the basis is a chain.
    ts.order = order;
    ts.chain.resize(order.size());
    for (const auto& g : ideal.basis()) {
      const Variable v = main_variable(g, order);
      const auto pos = static_cast<std::size_t>(std::find(order.begin(), order.end(), v) - order.begin());
      ts.chain[pos] = g;
    }
  } else {
    const ShapeResult sr = shape_solve(eqs, order);
    const Variable t = sr.t_is_first ? order.front() : Variable::named(kSeparatingName);
    if (!sr.t_is_first) ts.order.push_back(t);
    ts.order.insert(ts.order.end(), order.begin(), order.end());
    ts.chain.push_back(sr.shape->multiplicity_poly.to_poly(t));
    for (std::size_t i = sr.t_is_first ? 1 : 0; i < order.size(); ++i) {
      const Poly link = Poly(order[i]) - sr.shape->h[i].to_poly(t);
      ts.chain.push_back(link.scaled(Rational(1) / abs(link.content())));
    }
  }
  for (std::size_t k = 0; k < ts.chain.size(); ++k) ts.initials.push_back(ts.chain[k].leading_coeff_in(ts.order[k]));
  return {ts};
}

// ---- RealSolutionBox -------------------------------------------------------------------

RealSolutionBox::RealSolutionBox(std::shared_ptr<const ShapeForm> shape, AlgebraicNumber t)
    : shape_(std::move(shape)), t_(std::move(t)) {
  const ShapeForm& s = *shape_;
  for (std::size_t i = 0; i < s.vars.size(); ++i) {
    const UPoly& h = s.h[i];
    if (h.degree() <= 0) {
      coords_.emplace(s.vars[i], h.coeff(0));
      continue;
    }
    if (s.g.degree() == 1) {
      coords_.emplace(s.vars[i], h.evaluate(-s.g.coeff(0) / s.g.coeff(1)));
      continue;
    }
    const UPoly& m = s.coordinate_minpoly[i];
    if (m.degree() == 1) {
      coords_.emplace(s.vars[i], Rational(-m.coeff(0) / m.coeff(1)));
      continue;
    }
    // Refine t until the enclosure of h(t), slightly widened, isolates one root of m.
    AlgebraicNumber a = t_;
    for (;;) {
      const Interval e = h.evaluate(a.interval());
      const Rational w = e.width() > 0 ? e.width() : a.interval().width();
      const Rational lo = e.lo - w, hi = e.hi + w;
      if (m.sign_at(lo) != Sign::Zero && m.sign_at(hi) != Sign::Zero && count_real_roots_between(m, lo, hi) == 1) {
        AlgebraicNumber c(m, Interval(lo, hi));
        if (auto q = c.as_rational()) {
          coords_.emplace(s.vars[i], *q);
        } else {
          coords_.emplace(s.vars[i], std::move(c));
        }
        break;
      }
      a = a.refined();
    }
  }
  for (const auto& [f, mult] : squarefree_decomposition(s.multiplicity_poly))
    if (t_.sign_of(f) == Sign::Zero) multiplicity_ = mult;
}

const Coordinate& RealSolutionBox::coord(Variable v) const {
  const auto it = coords_.find(v);
  if (it == coords_.end()) throw Error(ErrorKind::UnknownVariable, "no coordinate for '" + v.name() + "'");
  return it->second;
}

std::optional<Assignment> RealSolutionBox::rational_point() const {
  Assignment a;
  for (const auto& [v, c] : coords_) {
    const auto* q = std::get_if<Rational>(&c);
    if (!q) return std::nullopt;
    a.emplace(v, *q);
  }
  return a;
}

Sign RealSolutionBox::sign_of(const Poly& q) const {
  if (auto pt = rational_point()) {
    bool bound = true;
    for (const auto& v : q.variables()) bound = bound && pt->count(v);
    if (bound) return jacobi::sign_of(q.evaluate(*pt));
  }
  return t_.sign_of(compose_mod(q, *shape_));
}

std::string RealSolutionBox::to_string() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [v, c] : coords_) {
    os << (first ? "" : ", ") << v.name() << " = " << coordinate_to_string(c);
    first = false;
  }
  os << "}";
  if (multiplicity_ > 1) os << " multiplicity " << multiplicity_;
  return os.str();
}

// ---- solving ----------------------------------------------------------------------------

std::vector<RealSolutionBox> real_solutions(const std::vector<Poly>& eqs, const std::vector<Variable>& vars) {
  if (vars.size() > kMaxVariables)
    throw Error(ErrorKind::UnsupportedDimension,
                std::to_string(vars.size()) + " variables; at most " + std::to_string(kMaxVariables) + " are supported");
  return boxes_of(shape_solve(eqs, vars).shape);
}

std::vector<RealSolutionBox> real_solve(const TriangularSet& t, const std::vector<Poly>& side_nonzero,
                                        const std::vector<Poly>& strict_positive) {
  if (t.chain.size() != t.order.size())
    throw Error(ErrorKind::InvalidArgument, "triangular set needs one chain polynomial per variable");
  std::shared_ptr<ShapeForm> shape = shape_solve(t.chain, t.order).shape;
  if (shape) hide_separating(*shape);
  std::vector<RealSolutionBox> out;
  for (auto& box : boxes_of(shape)) {
    bool keep = true;
    for (const auto& p : side_nonzero) {
      const Sign s = box.sign_of(p);
      if (s == Sign::Zero) {
        keep = false;
        break;
      }
      box.signs.emplace_back(p, s);
    }
    if (!keep) continue;
    for (const auto& p : strict_positive) {
      const Sign s = box.sign_of(p);
      box.signs.emplace_back(p, s);
      box.boundary = box.boundary || s == Sign::Zero;
    }
    for (std::size_t k = 0; k < t.initials.size(); ++k) {
      bool hidden = false;
      for (const auto& v : t.initials[k].variables()) hidden = hidden || v.name() == kSeparatingName;
      if (!hidden && !t.initials[k].is_constant() && box.sign_of(t.initials[k]) == Sign::Zero)
        box.degenerate_initial = true;
    }
    out.push_back(std::move(box));
  }
  return out;
}

// ---- signs at algebraic points -------------------------------------------------------

Sign sign_at(const Poly& q, const std::map<Variable, Coordinate>& point) {
  Assignment rationals;
  std::vector<std::pair<Variable, AlgebraicNumber>> algebraic;
  for (const auto& v : q.variables()) {
    const auto it = point.find(v);
    if (it == point.end()) throw Error(ErrorKind::UnboundVariable, "variable '" + v.name() + "' is not bound");
    if (const auto* r = std::get_if<Rational>(&it->second)) {
      rationals.emplace(v, *r);
    } else {
      algebraic.emplace_back(v, std::get<AlgebraicNumber>(it->second));
    }
  }
  const Poly rest = q.substitute(rationals);
  if (rest.is_zero()) return Sign::Zero;
  if (rest.is_constant()) return sign_of(rest.constant_term());
  std::vector<std::pair<Variable, AlgebraicNumber>> live;
  for (auto& [v, a] : algebraic)
    if (rest.contains(v)) live.emplace_back(v, std::move(a));
  if (live.size() == 1) return live.front().second.sign_of(UPoly::from_poly(rest, live.front().first));

  // Several independent algebraic coordinates: bisect all of them until the
  // enclosure excludes zero.
  constexpr int kBudget = 256;
  for (int round = 0; round < kBudget; ++round) {
    Box box;
    for (const auto& [v, a] : live) box.emplace(v, a.interval());
    const Interval e = interval_evaluate(rest, box);
    if (e.lo > 0) return Sign::Positive;
    if (e.hi < 0) return Sign::Negative;
    for (auto& [v, a] : live) a = a.refined();
  }
  throw Error(ErrorKind::Numerical, "could not certify the sign of " + q.to_string() +
                                        " at a point with several irrational coordinates");
}

Sign sign_at(const Poly& q, const RealSolutionBox& box) { return box.sign_of(q); }

Poly resultant(const Poly& a, const Poly& b, Variable v) {
  if (a.is_zero() || b.is_zero()) return Poly();
  const auto ca = a.coefficients(v), cb = b.coefficients(v);
  const std::size_t m = ca.size() - 1, n = cb.size() - 1;
  if (m == 0) return a.pow(static_cast<unsigned>(n));
  if (n == 0) return b.pow(static_cast<unsigned>(m));
  Matrix<Poly> s(m + n, m + n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) s(r, r + k) = ca[m - k];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) s(n + r, r + k) = cb[n - k];
  return bareiss_determinant(std::move(s));
}

}  // namespace jacobi
