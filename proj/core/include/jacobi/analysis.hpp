#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jacobi/charpoly.hpp"
#include "jacobi/interval.hpp"
#include "jacobi/ode_model.hpp"
#include "jacobi/real_algebra.hpp"

namespace jacobi {

enum class Classification { JacobiStable, JacobiUnstable, Boundary, SideConditionViolated };

const char* to_string(Classification c);

struct ClassifiedFixedPoint {
  RealSolutionBox box;
  Classification classification = Classification::JacobiUnstable;
  /// Signs of a_n and Delta_1..Delta_n of char_poly(J^2); empty when the
  /// parity shortcut decided the point.
  std::optional<Sign> a_n_sign;
  std::vector<Sign> delta_signs;
};

struct StabilityReport {
  Assignment parameter_point;
  std::vector<ClassifiedFixedPoint> fixed_points;
  std::size_t stable_count = 0;
  bool parity_shortcut_used = false;

  bool has_boundary() const;
};

/// Exact count of Jacobi stable fixed points at a rational parameter point.
/// mu must bind every parameter and satisfy the parameter assumptions.
/// Fixed points violating a state assumption are kept and classified
/// SideConditionViolated.
StabilityReport jacobi_count(const OdeSystem& sys, const Assignment& mu);
/// Stops at the first Jacobi stable fixed point.
bool jacobi_exists(const OdeSystem& sys, const Assignment& mu);

/// Exists b, c, x: fixed point, nonvanishing denominators, char_poly(J)
/// factoring into quadratics with 2 c_j - b_j^2 > 0.
struct QeProblem {
  std::vector<std::string> free_vars;
  std::vector<std::string> quantified_vars;
  std::vector<Poly> equations;
  std::vector<Poly> inequations;
  std::vector<Poly> inequalities;
  std::vector<Assumption> assumptions;
  /// Odd dimension: the formula is false for every parameter value and the
  /// polynomial parts are left empty.
  bool always_unstable = false;
};

QeProblem emit_qe_problem(const OdeSystem& sys);
/// SMT-LIB 2 script in nonlinear real arithmetic.
std::string to_smtlib(const QeProblem& qe);
/// Human-readable layout: one conjunct per line.
std::string to_readable(const QeProblem& qe);

/// Parsed SMT-LIB produced by to_smtlib (or anything in the same subset).
struct SmtAtom {
  std::string relation;  // "=", ">", ">=", "<", "<=", "distinct"
  Poly lhs;              // relation holds between lhs and 0
};

struct SmtScript {
  std::string logic;
  std::vector<std::string> constants;
  std::vector<std::vector<std::string>> exists_blocks;
  std::vector<SmtAtom> atoms;
  bool check_sat = false;
};

/// Reads the declare-const / assert / exists / and / not / arithmetic subset.
/// Throws ParseError.
SmtScript read_smtlib(std::string_view text);

/// eq:, neq:, gt: blocks with the Hurwitz data of J^2 written out with
/// denominators cleared.
std::string emit_semialgebraic(const OdeSystem& sys);

struct NamedCondition {
  std::string name;
  Poly poly;
};

/// `name = expression` per line, '#' comments. Throws ParseError with the
/// 1-based line number.
std::vector<NamedCondition> parse_conditions(std::string_view text);
std::vector<NamedCondition> load_conditions(const std::filesystem::path& path);

/// Exact signs; throws Error(UnboundVariable) if the point misses a variable.
std::vector<std::pair<std::string, Sign>> check_conditions(const std::vector<NamedCondition>& conditions,
                                                          const Assignment& point);

struct ScanAxis {
  std::string name;
  Rational lo, hi;
  unsigned steps = 1;
};

struct ScanPoint {
  Assignment mu;
  std::optional<std::size_t> stable_count;
  bool boundary = false;
  /// Empty on success, else the error kind ("non_isolated_fixed_points", ...).
  std::string error;
  std::string message;
  std::vector<Sign> condition_signs;
};

struct ScanResult {
  std::vector<std::string> axes;
  std::vector<std::string> condition_names;
  std::vector<ScanPoint> grid;
};

/// Grid lo + k (hi - lo) / steps per axis, first axis varying slowest. An
/// axis with lo == hi contributes one point. Parameters not scanned are taken
/// from `fixed`. workers == 0 uses the hardware concurrency.
ScanResult scan_parameters(const OdeSystem& sys, const std::vector<ScanAxis>& axes, const Assignment& fixed,
                           const std::vector<NamedCondition>& conditions, unsigned workers = 1);

}  // namespace jacobi
