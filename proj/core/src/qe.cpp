#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "jacobi/analysis.hpp"
#include "jacobi/errors.hpp"

namespace jacobi {

namespace {

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
  return s;
}

std::string fresh_name(const OdeSystem& sys, std::string base) {
  while (sys.is_state(base + "1") || sys.is_param(base + "1")) base += "_";
  return base;
}

std::string smt_rational(const Rational& q) {
  const Rational a = abs(q);
  std::string s = a.get_den() == 1 ? a.get_num().get_str() : "(/ " + a.get_num().get_str() + " " + a.get_den().get_str() + ")";
  return sgn(q) < 0 ? "(- " + s + ")" : s;
}

// |c| * monomial as an SMT product; powers are written out as repeated factors.
std::string smt_term(const Term& t) {
  std::vector<std::string> factors;
  const Rational a = abs(t.coeff);
  if (a != 1 || t.mono.is_one()) factors.push_back(smt_rational(a));
  for (const auto& [id, e] : t.mono.entries())
    for (std::uint32_t k = 0; k < e; ++k) factors.push_back(Variable::from_id(id).name());
  return factors.size() == 1 ? factors[0] : "(* " + join(factors, " ") + ")";
}

std::string smt_poly(const Poly& p) {
  if (p.is_zero()) return "0";
  std::vector<std::string> pos, neg;
  for (const auto& t : p.terms()) (sgn(t.coeff) > 0 ? pos : neg).push_back(smt_term(t));
  if (pos.empty()) return "(- " + (neg.size() == 1 ? neg[0] : "(+ " + join(neg, " ") + ")") + ")";
  const std::string head = pos.size() == 1 ? pos[0] : "(+ " + join(pos, " ") + ")";
  return neg.empty() ? head : "(- " + head + " " + join(neg, " ") + ")";
}

const char* smt_relation(Assumption::Relation r) {
  switch (r) {
    case Assumption::Relation::Greater: return ">";
    case Assumption::Relation::GreaterEqual: return ">=";
    case Assumption::Relation::Less: return "<";
    case Assumption::Relation::LessEqual: return "<=";
    case Assumption::Relation::NotEqual: return "distinct";
  }
  return "?";
}

// ---- SMT-LIB reader ----

struct SExpr {
  std::string atom;  // empty for a list
  std::vector<SExpr> items;
  std::size_t pos = 0;
  bool is_list() const { return atom.empty(); }
};

class SExprParser {
 public:
  explicit SExprParser(std::string_view text) : s_(text) {}

  std::vector<SExpr> parse_all() {
    std::vector<SExpr> out;
    for (skip(); i_ < s_.size(); skip()) out.push_back(parse());
    return out;
  }

 private:
  void skip() {
    while (i_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        ++i_;
      } else if (s_[i_] == ';') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      } else {
        break;
      }
    }
  }

  SExpr parse() {
    skip();
    if (i_ >= s_.size()) throw ParseError("unexpected end of input", i_);
    SExpr e;
    e.pos = i_;
    if (s_[i_] == ')') throw ParseError("unexpected ')'", i_);
    if (s_[i_] == '(') {
      ++i_;
      for (skip(); i_ < s_.size() && s_[i_] != ')'; skip()) e.items.push_back(parse());
      if (i_ >= s_.size()) throw ParseError("unbalanced '('", e.pos);
      ++i_;
      return e;
    }
    const std::size_t start = i_;
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' && s_[i_] != ')' &&
           s_[i_] != ';')
      ++i_;
    e.atom = std::string(s_.substr(start, i_ - start));
    return e;
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

bool is_numeral(const std::string& a) {
  return !a.empty() && std::all_of(a.begin(), a.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

class SmtReader {
 public:
  SmtScript read(std::string_view text) {
    for (const auto& cmd : SExprParser(text).parse_all()) command(cmd);
    return std::move(out_);
  }

 private:
  [[noreturn]] static void fail(const std::string& what, const SExpr& at) { throw ParseError(what, at.pos); }

  static const std::string& head(const SExpr& e) {
    if (!e.is_list() || e.items.empty() || e.items[0].is_list()) fail("expected a command or application", e);
    return e.items[0].atom;
  }

  void command(const SExpr& c) {
    const std::string& h = head(c);
    if (h == "set-logic") {
      if (c.items.size() != 2) fail("set-logic takes one symbol", c);
      out_.logic = c.items[1].atom;
    } else if (h == "declare-const" || h == "declare-fun") {
      const bool fun = h == "declare-fun";
      if (c.items.size() != (fun ? 4u : 3u) || c.items[1].is_list()) fail("malformed " + h, c);
      if (fun && !(c.items[2].is_list() && c.items[2].items.empty())) fail("only nullary functions are supported", c);
      if (c.items.back().atom != "Real") fail("only Real sort is supported", c);
      declare(c.items[1]);
      out_.constants.push_back(c.items[1].atom);
    } else if (h == "assert") {
      if (c.items.size() != 2) fail("assert takes one term", c);
      formula(c.items[1]);
    } else if (h == "check-sat") {
      out_.check_sat = true;
    } else if (h == "set-info" || h == "set-option" || h == "exit" || h == "get-model") {
    } else {
      fail("unsupported command '" + h + "'", c);
    }
  }

  void declare(const SExpr& name) {
    if (name.is_list() || name.atom.empty() || is_numeral(name.atom)) fail("expected a symbol", name);
    if (!scope_.insert(name.atom).second) fail("'" + name.atom + "' declared twice", name);
  }

  void formula(const SExpr& f) {
    if (!f.is_list()) {
      if (f.atom == "true") return;
      if (f.atom == "false") {
        out_.atoms.push_back({"false", Poly()});
        return;
      }
      fail("expected a formula", f);
    }
    const std::string& h = head(f);
    if (h == "and") {
      for (std::size_t i = 1; i < f.items.size(); ++i) formula(f.items[i]);
    } else if (h == "exists") {
      if (f.items.size() != 3 || !f.items[1].is_list()) fail("malformed exists", f);
      std::vector<std::string> bound;
      for (const auto& b : f.items[1].items) {
        if (!b.is_list() || b.items.size() != 2 || b.items[1].atom != "Real") fail("malformed binder", b);
        declare(b.items[0]);
        bound.push_back(b.items[0].atom);
      }
      out_.exists_blocks.push_back(bound);
      formula(f.items[2]);
    } else if (h == "not") {
      if (f.items.size() != 2 || !f.items[1].is_list() || head(f.items[1]) != "=" || f.items[1].items.size() != 3)
        fail("only (not (= s t)) is supported", f);
      out_.atoms.push_back({"distinct", term(f.items[1].items[1]) - term(f.items[1].items[2])});
    } else if (h == "=" || h == ">" || h == ">=" || h == "<" || h == "<=" || h == "distinct") {
      if (f.items.size() != 3) fail("relations must be binary", f);
      out_.atoms.push_back({h, term(f.items[1]) - term(f.items[2])});
    } else {
      fail("unsupported connective '" + h + "'", f);
    }
  }

  Poly term(const SExpr& t) {
    if (!t.is_list()) {
      if (is_numeral(t.atom)) return Poly(Rational(t.atom));
      if (!scope_.count(t.atom)) fail("undeclared symbol '" + t.atom + "'", t);
      return Poly(Variable::named(t.atom));
    }
    const std::string& h = head(t);
    const std::size_t argc = t.items.size() - 1;
    if (argc == 0) fail("empty application", t);
    if (h == "+" || h == "*") {
      Poly acc = term(t.items[1]);
      for (std::size_t i = 2; i < t.items.size(); ++i) acc = h == "+" ? acc + term(t.items[i]) : acc * term(t.items[i]);
      return acc;
    }
    if (h == "-") {
      Poly acc = term(t.items[1]);
      if (argc == 1) return -acc;
      for (std::size_t i = 2; i < t.items.size(); ++i) acc -= term(t.items[i]);
      return acc;
    }
    if (h == "/") {
      Poly acc = term(t.items[1]);
      for (std::size_t i = 2; i < t.items.size(); ++i) {
        const Poly d = term(t.items[i]);
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero", t.items[i]);
        acc = acc.scaled(1 / d.constant_term());
      }
      return acc;
    }
    fail("unsupported function '" + h + "'", t);
  }

  SmtScript out_;
  std::set<std::string> scope_;
};

}  // namespace

QeProblem emit_qe_problem(const OdeSystem& sys) {
  QeProblem qe;
  qe.free_vars = sys.param_names();
  qe.assumptions = sys.assumptions();
  if (sys.dimension() % 2 == 1) {
    qe.always_unstable = true;
    return qe;
  }
  const std::size_t m = sys.dimension() / 2;
  const std::string bn = fresh_name(sys, "b"), cn = fresh_name(sys, "c");
  std::vector<Variable> b, c;
  for (std::size_t j = 1; j <= m; ++j) {
    b.push_back(Variable::named(bn + std::to_string(j)));
    c.push_back(Variable::named(cn + std::to_string(j)));
  }
  for (auto v : b) qe.quantified_vars.push_back(v.name());
  for (auto v : c) qe.quantified_vars.push_back(v.name());
  for (const auto& x : sys.state_names()) qe.quantified_vars.push_back(x);

  const FixedPointSystem fp = fixed_point_system(sys);
  const ProductFormConstraints pf = product_form_constraints(char_poly(jacobian(sys)), b, c);
  qe.equations = fp.equations;
  qe.equations.insert(qe.equations.end(), pf.equations.begin(), pf.equations.end());
  qe.inequations = fp.side_conditions;
  qe.inequalities = pf.inequalities;
  return qe;
}

std::string to_smtlib(const QeProblem& qe) {
  std::ostringstream os;
  os << "; exists a Jacobi stable fixed point\n(set-logic NRA)\n";
  for (const auto& v : qe.free_vars) os << "(declare-const " << v << " Real)\n";
  if (qe.always_unstable) {
    os << "; odd dimension: every fixed point is Jacobi unstable\n(assert false)\n(check-sat)\n";
    return os.str();
  }
  os << "(assert (exists (";
  for (std::size_t i = 0; i < qe.quantified_vars.size(); ++i) os << (i ? " " : "") << "(" << qe.quantified_vars[i] << " Real)";
  os << ")\n  (and\n";
  for (const auto& e : qe.equations) os << "    (= " << smt_poly(e) << " 0)\n";
  for (const auto& e : qe.inequations) os << "    (not (= " << smt_poly(e) << " 0))\n";
  for (const auto& e : qe.inequalities) os << "    (> " << smt_poly(e) << " 0)\n";
  for (const auto& a : qe.assumptions)
    os << "    (" << smt_relation(a.relation) << " " << a.name << " " << smt_rational(a.bound) << ")\n";
  os << "  )))\n(check-sat)\n";
  return os.str();
}

std::string to_readable(const QeProblem& qe) {
  std::ostringstream os;
  if (qe.always_unstable) {
    os << "false  (odd dimension: every fixed point is Jacobi unstable)\n";
    return os.str();
  }
  for (const auto& v : qe.quantified_vars) os << "exists " << v << " ";
  os << "[\n";
  std::vector<std::string> lines;
  for (const auto& e : qe.equations) lines.push_back(e.to_string() + " = 0");
  for (const auto& e : qe.inequations) lines.push_back(e.to_string() + " != 0");
  for (const auto& e : qe.inequalities) lines.push_back(e.to_string() + " > 0");
  for (const auto& a : qe.assumptions) lines.push_back(a.to_string());
  for (std::size_t i = 0; i < lines.size(); ++i) os << "    " << lines[i] << (i + 1 < lines.size() ? " and" : "") << "\n";
  os << "]\n";
  if (!qe.free_vars.empty()) os << "free: " << join(qe.free_vars, ", ") << "\n";
  return os.str();
}

SmtScript read_smtlib(std::string_view text) { return SmtReader().read(text); }

std::string emit_semialgebraic(const OdeSystem& sys) {
  const FixedPointSystem fp = fixed_point_system(sys);
  const auto hs = hurwitz_sequence(char_poly(matrix_square(jacobian(sys))));
  std::ostringstream os;
  os << "# Jacobi stable fixed points: real solutions in vars of the blocks below\n";
  if (sys.dimension() % 2 == 1) os << "# odd dimension: every fixed point is Jacobi unstable, the system has no solution\n";
  os << "vars: " << join(sys.state_names(), ", ") << "\n";
  os << "params:" << (sys.param_names().empty() ? "" : " " + join(sys.param_names(), ", ")) << "\n";
  // N/D > 0 iff N*D > 0; even powers of side conditions in D are dropped.
  auto cleared = [&](const RationalFunction& f) {
    Poly rest = f.denom(), odd(1);
    for (const auto& s : fp.side_conditions) {
      unsigned e = 0;
      while (auto q = divide_exact(rest, s)) {
        rest = *q;
        ++e;
      }
      if (e % 2) odd *= s;
    }
    if (!rest.is_constant()) return f.numer() * f.denom();
    return (f.numer() * odd).scaled(sgn(rest.constant_term()) < 0 ? -1 : 1);
  };
  for (const auto& e : fp.equations) os << "eq: " << e.to_string() << "\n";
  for (const auto& e : fp.side_conditions) os << "neq: " << e.to_string() << "\n";
  os << "gt: " << cleared(hs.a_n).to_string() << "\n";
  for (const auto& d : hs.delta) os << "gt: " << cleared(d).to_string() << "\n";
  for (const auto& a : sys.assumptions()) {
    const Poly l = a.lhs();
    switch (a.relation) {
      case Assumption::Relation::Greater: os << "gt: " << l.to_string() << "\n"; break;
      case Assumption::Relation::Less: os << "gt: " << (-l).to_string() << "\n"; break;
      case Assumption::Relation::GreaterEqual: os << "ge: " << l.to_string() << "\n"; break;
      case Assumption::Relation::LessEqual: os << "ge: " << (-l).to_string() << "\n"; break;
      case Assumption::Relation::NotEqual: os << "neq: " << l.to_string() << "\n"; break;
    }
  }
  return os.str();
}

}  // namespace jacobi
