#include "jacobi/ode_model.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "jacobi/errors.hpp"
#include "jacobi/parser.hpp"

namespace jacobi {

// ---- assumptions ------------------------------------------------------------

bool Assumption::holds(const Rational& value) const {
  switch (relation) {
    case Relation::Greater: return value > bound;
    case Relation::GreaterEqual: return value >= bound;
    case Relation::Less: return value < bound;
    case Relation::LessEqual: return value <= bound;
    case Relation::NotEqual: return value != bound;
  }
  return false;
}

Poly Assumption::lhs() const { return var(name) - Poly(bound); }

const char* Assumption::relation_symbol() const {
  switch (relation) {
    case Relation::Greater: return ">";
    case Relation::GreaterEqual: return ">=";
    case Relation::Less: return "<";
    case Relation::LessEqual: return "<=";
    case Relation::NotEqual: return "!=";
  }
  return "?";
}

std::string Assumption::to_string() const {
  return name + " " + relation_symbol() + " " + jacobi::to_string(bound);
}

// ---- system -----------------------------------------------------------------

OdeSystem::OdeSystem(std::vector<std::string> state_vars, std::vector<std::string> params,
                     std::vector<RationalFunction> rhs, std::vector<Assumption> assumptions)
    : state_(std::move(state_vars)),
      params_(std::move(params)),
      rhs_(std::move(rhs)),
      assumptions_(std::move(assumptions)) {
  if (state_.empty()) throw Error(ErrorKind::InvalidSystem, "system has no state variables");
  if (rhs_.size() != state_.size())
    throw Error(ErrorKind::InvalidSystem, "expected " + std::to_string(state_.size()) + " right-hand sides, got " +
                                              std::to_string(rhs_.size()));
  std::set<std::string> seen;
  for (const auto& n : state_) {
    if (!is_identifier(n)) throw Error(ErrorKind::InvalidSystem, "invalid identifier '" + n + "'");
    if (!seen.insert(n).second) throw Error(ErrorKind::InvalidSystem, "duplicate state variable '" + n + "'");
  }
  for (const auto& n : params_) {
    if (!is_identifier(n)) throw Error(ErrorKind::InvalidSystem, "invalid identifier '" + n + "'");
    if (!seen.insert(n).second) {
      const bool clash = std::find(state_.begin(), state_.end(), n) != state_.end();
      throw Error(ErrorKind::InvalidSystem, clash ? "'" + n + "' is declared both as variable and as parameter"
                                                  : "duplicate parameter '" + n + "'");
    }
  }
  for (const auto& n : state_) state_vars_.push_back(Variable::named(n));
  for (const auto& n : params_) param_vars_.push_back(Variable::named(n));
  std::set<Variable> declared(state_vars_.begin(), state_vars_.end());
  declared.insert(param_vars_.begin(), param_vars_.end());
  for (std::size_t i = 0; i < rhs_.size(); ++i)
    for (auto v : rhs_[i].variables())
      if (!declared.count(v))
        throw Error(ErrorKind::InvalidSystem, "right-hand side " + std::to_string(i + 1) + " uses undeclared '" +
                                                  v.name() + "'");
  for (const auto& a : assumptions_)
    if (!seen.count(a.name))
      throw Error(ErrorKind::InvalidSystem, "assumption on undeclared identifier '" + a.name + "'");
}

bool OdeSystem::is_state(std::string_view name) const {
  return std::find(state_.begin(), state_.end(), name) != state_.end();
}

bool OdeSystem::is_param(std::string_view name) const {
  return std::find(params_.begin(), params_.end(), name) != params_.end();
}

void OdeSystem::check_parameter_assumptions(const Assignment& mu) const {
  std::string failures;
  for (const auto& a : assumptions_) {
    if (!is_param(a.name)) continue;
    const auto it = mu.find(Variable::named(a.name));
    if (it == mu.end()) continue;
    if (!a.holds(it->second)) {
      if (!failures.empty()) failures += "; ";
      failures += a.to_string() + " fails at " + a.name + " = " + jacobi::to_string(it->second);
    }
  }
  if (!failures.empty()) throw Error(ErrorKind::AssumptionViolated, "assumption violated: " + failures);
}

bool OdeSystem::state_assumptions_hold(const Assignment& point) const {
  for (const auto& a : assumptions_) {
    if (!is_state(a.name)) continue;
    const auto it = point.find(Variable::named(a.name));
    if (it != point.end() && !a.holds(it->second)) return false;
  }
  return true;
}

OdeSystem OdeSystem::specialize(const Assignment& mu) const {
  std::vector<std::string> remaining;
  for (std::size_t k = 0; k < params_.size(); ++k)
    if (!mu.count(param_vars_[k])) remaining.push_back(params_[k]);
  Assignment restricted;
  for (auto v : param_vars_)
    if (auto it = mu.find(v); it != mu.end()) restricted.insert(*it);
  std::vector<RationalFunction> rhs;
  rhs.reserve(rhs_.size());
  for (const auto& f : rhs_) rhs.push_back(f.substitute(restricted));
  std::vector<Assumption> kept;
  for (const auto& a : assumptions_)
    if (is_state(a.name) || std::find(remaining.begin(), remaining.end(), a.name) != remaining.end())
      kept.push_back(a);
  return OdeSystem(state_, std::move(remaining), std::move(rhs), std::move(kept));
}

Assignment OdeSystem::bind_parameters(const std::vector<std::pair<std::string, Rational>>& values) const {
  Assignment mu;
  for (const auto& [name, value] : values) {
    if (!is_param(name)) throw Error(ErrorKind::UnknownVariable, "'" + name + "' is not a parameter of the system");
    mu[Variable::named(name)] = value;
  }
  for (const auto& p : params_)
    if (!mu.count(Variable::named(p))) throw Error(ErrorKind::UnboundVariable, "parameter '" + p + "' has no value");
  return mu;
}

std::string OdeSystem::to_text() const {
  std::ostringstream os;
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& n : v) s += (s.empty() ? "" : ", ") + n;
    return s;
  };
  os << "vars: " << join(state_) << "\n";
  if (!params_.empty()) os << "params: " << join(params_) << "\n";
  if (!assumptions_.empty()) {
    std::vector<std::string> parts;
    for (const auto& a : assumptions_) parts.push_back(a.to_string());
    os << "assume: " << join(parts) << "\n";
  }
  for (std::size_t i = 0; i < state_.size(); ++i) os << "d" << state_[i] << "/dt = " << rhs_[i].to_string() << "\n";
  return os.str();
}

// ---- loading ----------------------------------------------------------------

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = s.find(',', start);
    const std::string item = trim(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Assumption parse_assumption(const std::string& item, std::size_t line) {
  static const std::pair<const char*, Assumption::Relation> ops[] = {
      {">=", Assumption::Relation::GreaterEqual}, {"<=", Assumption::Relation::LessEqual},
      {"!=", Assumption::Relation::NotEqual},     {">", Assumption::Relation::Greater},
      {"<", Assumption::Relation::Less},
  };
  for (const auto& [sym, rel] : ops) {
    const auto at = item.find(sym);
    if (at == std::string::npos) continue;
    Assumption a;
    a.name = trim(std::string_view(item).substr(0, at));
    a.relation = rel;
    if (!is_identifier(a.name)) throw ParseError("bad assumption '" + item + "'", 0, line);
    try {
      a.bound = parse_rational(trim(std::string_view(item).substr(at + std::string_view(sym).size())));
    } catch (const Error&) {
      throw ParseError("bad bound in assumption '" + item + "'", 0, line);
    }
    return a;
  }
  throw ParseError("assumption '" + item + "' has no relation", 0, line);
}

}  // namespace

OdeSystem load_system(std::string_view text) {
  std::vector<std::string> vars, params;
  bool have_vars = false, have_params = false;
  std::vector<Assumption> assumptions;
  std::vector<std::pair<std::string, std::pair<std::string, std::size_t>>> equations;  // var -> (expr, line)

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string line = trim(raw);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    auto keyword = [&](std::string_view kw) { return line.rfind(kw, 0) == 0; };
    if (keyword("vars:")) {
      if (have_vars) throw ParseError("duplicate 'vars:' line", 0, line_no);
      vars = split_list(std::string_view(line).substr(5));
      have_vars = true;
    } else if (keyword("params:")) {
      if (have_params) throw ParseError("duplicate 'params:' line", 0, line_no);
      params = split_list(std::string_view(line).substr(7));
      have_params = true;
    } else if (keyword("assume:")) {
      for (const auto& item : split_list(std::string_view(line).substr(7)))
        assumptions.push_back(parse_assumption(item, line_no));
    } else if (line[0] == 'd') {
      const auto eq = line.find('=');
      const auto slash = line.find("/dt");
      if (eq == std::string::npos || slash == std::string::npos || slash > eq ||
          trim(std::string_view(line).substr(slash + 3, eq - slash - 3)) != "")
        throw ParseError("expected 'd<var>/dt = <expression>'", 0, line_no);
      equations.push_back({trim(std::string_view(line).substr(1, slash - 1)),
                           {trim(std::string_view(line).substr(eq + 1)), line_no}});
    } else {
      throw ParseError("unrecognised line '" + line + "'", 0, line_no);
    }
    if (end == text.size()) break;
  }

  if (!have_vars || vars.empty()) throw Error(ErrorKind::InvalidSystem, "missing 'vars:' declaration");
  std::map<std::string, RationalFunction> by_var;
  for (const auto& [name, src] : equations) {
    if (std::find(vars.begin(), vars.end(), name) == vars.end())
      throw ParseError("equation for undeclared variable '" + name + "'", 0, src.second);
    if (by_var.count(name)) throw ParseError("duplicate equation for '" + name + "'", 0, src.second);
    try {
      by_var.emplace(name, parse_expression(src.first, vars, params));
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()) + " (line " + std::to_string(src.second) + ")", e.position(),
                       src.second);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::UndeclaredIdentifier || e.kind() == ErrorKind::ZeroDenominator)
        throw ParseError(std::string(e.what()) + " (line " + std::to_string(src.second) + ")", 0, src.second);
      throw;
    }
  }
  std::vector<RationalFunction> rhs;
  for (const auto& v : vars) {
    const auto it = by_var.find(v);
    if (it == by_var.end()) throw Error(ErrorKind::InvalidSystem, "missing right-hand side for '" + v + "'");
    rhs.push_back(it->second);
  }
  return OdeSystem(std::move(vars), std::move(params), std::move(rhs), std::move(assumptions));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

OdeSystem load_system_file(const std::filesystem::path& path) { return load_system(read_text_file(path)); }

// ---- derived objects ----------------------------------------------------------

SymbolicMatrix jacobian(const OdeSystem& sys) {
  const std::size_t n = sys.dimension();
  SymbolicMatrix j(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) j(r, c) = sys.rhs()[r].derivative(sys.state_vars()[c]);
  return j;
}

FixedPointSystem fixed_point_system(const OdeSystem& sys) {
  FixedPointSystem fps;
  for (const auto& f : sys.rhs()) {
    fps.equations.push_back(f.numer());
    if (f.denom().is_constant()) continue;
    const Poly d = f.denom().primitive();
    if (std::find(fps.side_conditions.begin(), fps.side_conditions.end(), d) == fps.side_conditions.end())
      fps.side_conditions.push_back(d);
  }
  return fps;
}

}  // namespace jacobi
