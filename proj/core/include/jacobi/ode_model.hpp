#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "jacobi/matrix.hpp"
#include "jacobi/rational_function.hpp"

namespace jacobi {

using SymbolicMatrix = Matrix<RationalFunction>;

/// Sign assumption `name rel bound` from an `assume:` line.
struct Assumption {
  enum class Relation { Greater, GreaterEqual, Less, LessEqual, NotEqual };

  std::string name;
  Relation relation = Relation::Greater;
  Rational bound;

  bool holds(const Rational& value) const;
  /// name - bound, the polynomial whose sign the relation constrains.
  Poly lhs() const;
  const char* relation_symbol() const;
  std::string to_string() const;
};

/// Parametric rational ODE system dx/dt = f(x, mu).
class OdeSystem {
 public:
  /// Validates dimensions, identifier clashes and that every rhs only uses
  /// declared symbols; throws Error(InvalidSystem) otherwise.
  OdeSystem(std::vector<std::string> state_vars, std::vector<std::string> params, std::vector<RationalFunction> rhs,
            std::vector<Assumption> assumptions = {});

  std::size_t dimension() const noexcept { return state_.size(); }
  const std::vector<std::string>& state_names() const noexcept { return state_; }
  const std::vector<std::string>& param_names() const noexcept { return params_; }
  const std::vector<Variable>& state_vars() const noexcept { return state_vars_; }
  const std::vector<Variable>& param_vars() const noexcept { return param_vars_; }
  const std::vector<RationalFunction>& rhs() const noexcept { return rhs_; }
  const std::vector<Assumption>& assumptions() const noexcept { return assumptions_; }

  bool is_state(std::string_view name) const;
  bool is_param(std::string_view name) const;

  /// Parameter assumptions not satisfied by mu (only bound parameters are
  /// checked). Throws Error(AssumptionViolated) listing the failures.
  void check_parameter_assumptions(const Assignment& mu) const;
  /// True if every assumption on a state variable holds at the point.
  bool state_assumptions_hold(const Assignment& point) const;

  /// Substitutes the bound parameters; they disappear from params().
  OdeSystem specialize(const Assignment& mu) const;

  /// Binds "name=value" pairs against the declared parameters; throws
  /// Error(UnknownVariable) for an undeclared name.
  Assignment bind_parameters(const std::vector<std::pair<std::string, Rational>>& values) const;

  /// Round-trippable text in the system file format.
  std::string to_text() const;

 private:
  std::vector<std::string> state_;
  std::vector<std::string> params_;
  std::vector<Variable> state_vars_;
  std::vector<Variable> param_vars_;
  std::vector<RationalFunction> rhs_;
  std::vector<Assumption> assumptions_;
};

/// Fixed-point equations (rhs numerators) and the non-constant rhs
/// denominators that must not vanish.
struct FixedPointSystem {
  std::vector<Poly> equations;
  std::vector<Poly> side_conditions;
};

/// Parses the line-oriented system format:
///   vars: x, y
///   params: a, b
///   assume: a > 0, b >= 1/2
///   dx/dt = <expression>
/// '#' starts a comment. Throws ParseError (with line number) or
/// Error(InvalidSystem).
OdeSystem load_system(std::string_view text);
OdeSystem load_system_file(const std::filesystem::path& path);

SymbolicMatrix jacobian(const OdeSystem& sys);
FixedPointSystem fixed_point_system(const OdeSystem& sys);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace jacobi
