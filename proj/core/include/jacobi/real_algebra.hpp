#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "jacobi/interval.hpp"
#include "jacobi/poly.hpp"
#include "jacobi/upoly.hpp"

namespace jacobi {

// ---- univariate real roots --------------------------------------------------------

/// Signed remainder sequence p, p', -rem(p, p'), ... with each member scaled
/// by a positive rational to keep coefficients small.
std::vector<UPoly> sturm_sequence(const UPoly& p);

/// Number of distinct real roots in the closed interval (squarefree part is
/// taken first).
std::size_t count_real_roots(const UPoly& p, const Interval& iv);
/// Number of distinct real roots on the whole line.
std::size_t count_real_roots(const UPoly& p);
/// Number of distinct real roots in the open interval (lo, hi); a missing
/// endpoint means infinity.
std::size_t count_real_roots_between(const UPoly& p, const std::optional<Rational>& lo,
                                      const std::optional<Rational>& hi);

/// Univariate Poly front ends; throw Error(InvalidArgument) for a polynomial
/// in more than one variable.
Poly squarefree_part(const Poly& p);
std::size_t count_real_roots(const Poly& p, const Interval& iv);
std::size_t count_real_roots(const Poly& p);

/// Isolating interval with nonroot endpoints (a point interval never occurs).
struct IsolatedRoot {
  Interval interval;
  unsigned multiplicity = 1;
};

/// Disjoint isolating intervals for the distinct real roots, sorted
/// ascending, with multiplicities from the squarefree decomposition.
/// Throws Error(InvalidArgument) for the zero polynomial.
std::vector<IsolatedRoot> isolate_real_roots(const UPoly& p);
std::vector<IsolatedRoot> isolate_real_roots(const Poly& p);

/// Real root of a squarefree polynomial, located by an open isolating
/// interval whose endpoints are not roots.
class AlgebraicNumber {
 public:
  /// Validates that `defining` is squarefree with exactly one root inside
  /// the interval and none at its endpoints.
  AlgebraicNumber(UPoly defining, Interval isolating);
  static AlgebraicNumber from_rational(const Rational& q);

  const UPoly& defining() const noexcept { return p_; }
  const Interval& interval() const noexcept { return iv_; }

  /// Halves the isolating interval.
  AlgebraicNumber refined() const;
  /// Refines until the width is at most `width`.
  AlgebraicNumber refined_to(const Rational& width) const;

  /// Exact sign of q at this number: zero is certified by a gcd with the
  /// defining polynomial, nonzero signs by interval refinement.
  Sign sign_of(const UPoly& q) const;
  /// Exact comparison with a rational.
  Sign compare(const Rational& q) const;
  /// The value if it is rational.
  std::optional<Rational> as_rational() const;
  double approx() const;
  std::string to_string() const;

 private:
  AlgebraicNumber() = default;
  UPoly p_;
  Interval iv_;
};

using Coordinate = std::variant<Rational, AlgebraicNumber>;

std::string coordinate_to_string(const Coordinate& c);
double coordinate_approx(const Coordinate& c);

// ---- multivariate elimination --------------------------------------------------------

/// Reduced lexicographic Groebner basis (Buchberger with sugar selection).
/// `lex_vars` lists the ring variables from the largest to the smallest;
/// every variable of the input must occur in it. Elements are primitive.
std::vector<Poly> lex_groebner_basis(const std::vector<Poly>& polys, const std::vector<Variable>& lex_vars);

/// Remainder of p modulo a Groebner basis with respect to the same order.
Poly normal_form(const Poly& p, const std::vector<Poly>& basis, const std::vector<Variable>& lex_vars);

/// Chain of polynomials with increasing main variables.
struct TriangularSet {
  std::vector<Variable> order;   // order[k] is the main variable of chain[k]
  std::vector<Poly> chain;
  std::vector<Poly> initials;    // leading coefficient of chain[k] in order[k]

  std::string to_string() const;
};

/// Triangularizes a zero-dimensional system; `order` lists the variables
/// from the first eliminated-into (smallest) to the last. Returns the reduced
/// lexicographic basis when it is already triangular; otherwise a single
/// shape-form chain [g(t), x_1 - h_1(t), ...] in a separating variable "_t".
/// Throws Error(NonIsolatedFixedPoints) for a positive-dimensional system and
/// Error(UnsupportedDimension) for more than four variables. An inconsistent
/// system yields an empty list.
std::vector<TriangularSet> triangularize(const std::vector<Poly>& eqs, const std::vector<Variable>& order);

/// Shared rational univariate representation of the real solutions of a
/// zero-dimensional system: x_i = h_i(t) with g(t) squarefree.
struct ShapeForm {
  std::vector<Variable> vars;
  UPoly g;
  std::vector<UPoly> h;                   // one per variable, degree < deg g
  std::vector<UPoly> coordinate_minpoly;  // squarefree minimal polynomial of each x_i
  UPoly multiplicity_poly;                // minimal polynomial of t before radical extraction
};

/// One real solution, located exactly.
class RealSolutionBox {
 public:
  RealSolutionBox(std::shared_ptr<const ShapeForm> shape, AlgebraicNumber t);

  const std::map<Variable, Coordinate>& coords() const noexcept { return coords_; }
  const Coordinate& coord(Variable v) const;
  /// The point as rationals when every coordinate is rational.
  std::optional<Assignment> rational_point() const;
  unsigned multiplicity() const noexcept { return multiplicity_; }

  /// Exact sign of a polynomial in the solution's variables.
  Sign sign_of(const Poly& q) const;

  /// Constraint signs recorded by real_solve.
  std::vector<std::pair<Poly, Sign>> signs;
  bool boundary = false;            // some strict_positive polynomial vanishes
  bool degenerate_initial = false;  // some chain initial vanishes here

  std::string to_string() const;

 private:
  std::shared_ptr<const ShapeForm> shape_;
  AlgebraicNumber t_;
  std::map<Variable, Coordinate> coords_;
  unsigned multiplicity_ = 1;
};

/// Real solutions of a zero-dimensional system in the given variables,
/// without constraints. Throws like triangularize.
std::vector<RealSolutionBox> real_solutions(const std::vector<Poly>& eqs, const std::vector<Variable>& vars);

/// Real solutions of the chain with every side_nonzero polynomial nonzero,
/// annotated with the signs of each strict_positive polynomial.
std::vector<RealSolutionBox> real_solve(const TriangularSet& t, const std::vector<Poly>& side_nonzero,
                                        const std::vector<Poly>& strict_positive);

/// Sign of q at a point of rational and algebraic coordinates. Exact when at
/// most one coordinate is irrational; otherwise resolved by refinement and
/// Error(Numerical) is thrown if that cannot certify a nonzero sign.
Sign sign_at(const Poly& q, const std::map<Variable, Coordinate>& point);
Sign sign_at(const Poly& q, const RealSolutionBox& box);

/// Resultant with respect to v via the Sylvester determinant.
Poly resultant(const Poly& a, const Poly& b, Variable v);

}  // namespace jacobi
