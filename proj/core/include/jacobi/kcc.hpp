#pragma once

#include <string>
#include <variant>
#include <vector>

#include "jacobi/ode_model.hpp"

namespace jacobi {

/// Velocity symbols y_i = dx_i/dt, one per state variable.
struct VelocityVars {
  std::vector<std::string> names;
  std::vector<Variable> vars;

  /// "<x>_dot" for each state variable, suffixed with underscores until it
  /// clashes with no state variable or parameter.
  static VelocityVars for_system(const OdeSystem& sys);
  /// Explicit names; throws Error(InvalidArgument) on a clash or length
  /// mismatch.
  static VelocityVars named(const OdeSystem& sys, const std::vector<std::string>& names);
};

struct KccObjects {
  std::vector<RationalFunction> spray;  // G^i
  SymbolicMatrix connection;            // N^i_j
  bool berwald_is_zero = false;         // dN^i_j/dy_l == 0 for all i, j, l
  SymbolicMatrix curvature;             // P^i_j
};

/// G^i = -1/2 * sum_k f_ik y_k.
std::vector<RationalFunction> spray_coefficients(const OdeSystem& sys, const VelocityVars& vel);
/// N^i_j = dG^i/dy_j.
SymbolicMatrix nonlinear_connection(const std::vector<RationalFunction>& spray, const VelocityVars& vel);
/// True if every dN^i_j/dy_l vanishes.
bool berwald_vanishes(const SymbolicMatrix& connection, const VelocityVars& vel);
/// Second invariant computed from its definition
///   P^i_j = -2 dG^i/dx_j - 2 G^l G^i_jl + y_l dN^i_j/dx_l + N^i_l N^l_j
/// with the Berwald term taken from the connection.
SymbolicMatrix deviation_curvature(const OdeSystem& sys, const VelocityVars& vel);
/// Closed form 1/2 sum_l f_ijl y_l + 1/4 sum_l f_il f_lj, used as a cross-check.
SymbolicMatrix deviation_curvature_closed_form(const OdeSystem& sys, const VelocityVars& vel);
/// eps^i = 2 G^i - N^i_j y_j.
std::vector<RationalFunction> first_invariant(const OdeSystem& sys, const VelocityVars& vel);
KccObjects kcc_objects(const OdeSystem& sys, const VelocityVars& vel);

/// Symbolic fixed point given by a chain of polynomials that vanish there,
/// triangular with respect to `order` (chain[k] has main variable order[k]
/// and only involves order[0..k] plus parameters). Nonvanishing of the
/// chain's initials is assumed.
struct SymbolicFixedPoint {
  std::vector<Poly> chain;
  std::vector<std::string> order;
};

using FixedPointSpec = std::variant<Assignment, SymbolicFixedPoint>;

/// Checks P(x, y = f(x)) == J^2 / 4 at the fixed point. A numeric point must
/// bind every state variable and parameter; it is first checked to annihilate
/// every rhs numerator. A symbolic point is checked by pseudo-reducing the
/// rhs numerators and the entrywise differences modulo the chain.
/// Throws Error(NotFixedPoint) or Error(VanishingDenominator).
bool verify_curvature_identity(const OdeSystem& sys, const FixedPointSpec& fixed_point);

/// Successive pseudo-remainders of p by chain[k] in order[k], last first.
Poly reduce_by_chain(const Poly& p, const SymbolicFixedPoint& fp);

}  // namespace jacobi
