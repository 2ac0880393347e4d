#include "jacobi/kcc.hpp"

#include <algorithm>
#include <set>

#include "jacobi/errors.hpp"

namespace jacobi {

namespace {

void check_velocity(const OdeSystem& sys, const VelocityVars& vel) {
  if (vel.vars.size() != sys.dimension())
    throw Error(ErrorKind::InvalidArgument, "velocity variable count does not match the system dimension");
}

RationalFunction half() { return RationalFunction(Rational(1, 2)); }

}  // namespace

VelocityVars VelocityVars::for_system(const OdeSystem& sys) {
  std::vector<std::string> names;
  for (const auto& x : sys.state_names()) {
    std::string name = x + "_dot";
    auto taken = [&](const std::string& n) {
      return sys.is_state(n) || sys.is_param(n) || std::find(names.begin(), names.end(), n) != names.end();
    };
    while (taken(name)) name += "_";
    names.push_back(name);
  }
  return named(sys, names);
}

VelocityVars VelocityVars::named(const OdeSystem& sys, const std::vector<std::string>& names) {
  if (names.size() != sys.dimension())
    throw Error(ErrorKind::InvalidArgument, "need one velocity variable per state variable");
  std::set<std::string> seen;
  VelocityVars vel;
  for (const auto& n : names) {
    if (!is_identifier(n) || sys.is_state(n) || sys.is_param(n) || !seen.insert(n).second)
      throw Error(ErrorKind::InvalidArgument, "velocity variable '" + n + "' clashes or is not an identifier");
    vel.names.push_back(n);
    vel.vars.push_back(Variable::named(n));
  }
  return vel;
}

std::vector<RationalFunction> spray_coefficients(const OdeSystem& sys, const VelocityVars& vel) {
  check_velocity(sys, vel);
  const SymbolicMatrix j = jacobian(sys);
  const std::size_t n = sys.dimension();
  std::vector<RationalFunction> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    RationalFunction acc;
    for (std::size_t k = 0; k < n; ++k) acc += j(i, k) * RationalFunction(Poly(vel.vars[k]));
    g[i] = -(half() * acc);
  }
  return g;
}

SymbolicMatrix nonlinear_connection(const std::vector<RationalFunction>& spray, const VelocityVars& vel) {
  const std::size_t n = spray.size();
  if (vel.vars.size() != n) throw Error(ErrorKind::InvalidArgument, "velocity variable count mismatch");
  SymbolicMatrix nc(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) nc(i, j) = spray[i].derivative(vel.vars[j]);
  return nc;
}

bool berwald_vanishes(const SymbolicMatrix& connection, const VelocityVars& vel) {
  for (const auto& e : connection.entries())
    for (auto y : vel.vars)
      if (!e.derivative(y).is_zero()) return false;
  return true;
}

SymbolicMatrix deviation_curvature(const OdeSystem& sys, const VelocityVars& vel) {
  const std::size_t n = sys.dimension();
  const auto& xs = sys.state_vars();
  const auto g = spray_coefficients(sys, vel);
  const SymbolicMatrix nc = nonlinear_connection(g, vel);
  SymbolicMatrix p(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      RationalFunction acc = RationalFunction(-2) * g[i].derivative(xs[j]);
      for (std::size_t l = 0; l < n; ++l) {
        const RationalFunction berwald = nc(i, j).derivative(vel.vars[l]);  // G^i_jl
        if (!berwald.is_zero()) acc -= RationalFunction(2) * g[l] * berwald;
        acc += RationalFunction(Poly(vel.vars[l])) * nc(i, j).derivative(xs[l]);
        acc += nc(i, l) * nc(l, j);
      }
      p(i, j) = acc;
    }
  return p;
}

SymbolicMatrix deviation_curvature_closed_form(const OdeSystem& sys, const VelocityVars& vel) {
  check_velocity(sys, vel);
  const std::size_t n = sys.dimension();
  const auto& xs = sys.state_vars();
  const SymbolicMatrix jac = jacobian(sys);
  const RationalFunction quarter(Rational(1, 4));
  SymbolicMatrix p(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      RationalFunction second, product;
      for (std::size_t l = 0; l < n; ++l) {
        second += jac(i, j).derivative(xs[l]) * RationalFunction(Poly(vel.vars[l]));
        product += jac(i, l) * jac(l, j);
      }
      p(i, j) = half() * second + quarter * product;
    }
  return p;
}

std::vector<RationalFunction> first_invariant(const OdeSystem& sys, const VelocityVars& vel) {
  const auto g = spray_coefficients(sys, vel);
  const SymbolicMatrix nc = nonlinear_connection(g, vel);
  const std::size_t n = sys.dimension();
  std::vector<RationalFunction> eps(n);
  for (std::size_t i = 0; i < n; ++i) {
    RationalFunction acc = RationalFunction(2) * g[i];
    for (std::size_t j = 0; j < n; ++j) acc -= nc(i, j) * RationalFunction(Poly(vel.vars[j]));
    eps[i] = acc;
  }
  return eps;
}

KccObjects kcc_objects(const OdeSystem& sys, const VelocityVars& vel) {
  KccObjects k;
  k.spray = spray_coefficients(sys, vel);
  k.connection = nonlinear_connection(k.spray, vel);
  k.berwald_is_zero = berwald_vanishes(k.connection, vel);
  k.curvature = deviation_curvature(sys, vel);
  return k;
}

Poly reduce_by_chain(const Poly& p, const SymbolicFixedPoint& fp) {
  if (fp.chain.size() != fp.order.size())
    throw Error(ErrorKind::InvalidArgument, "fixed-point chain and order differ in length");
  Poly r = p;
  for (std::size_t k = fp.chain.size(); k-- > 0;) {
    const Variable v = Variable::named(fp.order[k]);
    if (fp.chain[k].degree(v) == 0)
      throw Error(ErrorKind::DegenerateChain, "chain element " + fp.chain[k].to_string() + " does not involve " +
                                                  fp.order[k]);
    r = pseudo_remainder(r, fp.chain[k], v);
    if (r.is_zero()) break;
  }
  return r;
}

namespace {

// P with y := f(x), minus J^2 / 4.
SymbolicMatrix curvature_defect(const OdeSystem& sys) {
  const VelocityVars vel = VelocityVars::for_system(sys);
  SymbolicMatrix p = deviation_curvature(sys, vel);
  const std::size_t n = sys.dimension();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) p(i, j) = p(i, j).substitute(vel.vars[l], sys.rhs()[l]);
  const SymbolicMatrix j2 = matrix_square(jacobian(sys));
  const RationalFunction quarter(Rational(1, 4));
  SymbolicMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d(i, j) = p(i, j) - quarter * j2(i, j);
  return d;
}

}  // namespace

bool verify_curvature_identity(const OdeSystem& sys, const FixedPointSpec& fixed_point) {
  if (const auto* point = std::get_if<Assignment>(&fixed_point)) {
    for (std::size_t i = 0; i < sys.dimension(); ++i) {
      const Rational v = sys.rhs()[i].evaluate(*point);  // throws on a vanishing denominator
      if (v != 0)
        throw Error(ErrorKind::NotFixedPoint, "rhs " + std::to_string(i + 1) + " evaluates to " + to_string(v) +
                                                  ", not a fixed point");
    }
    const SymbolicMatrix d = curvature_defect(sys);
    for (const auto& e : d.entries())
      if (e.evaluate(*point) != 0) return false;
    return true;
  }
  const auto& fp = std::get<SymbolicFixedPoint>(fixed_point);
  for (std::size_t i = 0; i < sys.dimension(); ++i) {
    const RationalFunction& f = sys.rhs()[i];
    if (!reduce_by_chain(f.numer(), fp).is_zero())
      throw Error(ErrorKind::NotFixedPoint, "rhs " + std::to_string(i + 1) + " does not vanish modulo the chain");
    if (reduce_by_chain(f.denom(), fp).is_zero())
      throw Error(ErrorKind::VanishingDenominator, "rhs " + std::to_string(i + 1) +
                                                       " has a denominator vanishing on the fixed point");
  }
  const SymbolicMatrix d = curvature_defect(sys);
  for (const auto& e : d.entries()) {
    if (!reduce_by_chain(e.numer(), fp).is_zero()) return false;
    if (reduce_by_chain(e.denom(), fp).is_zero())
      throw Error(ErrorKind::VanishingDenominator, "curvature entry has a denominator vanishing on the fixed point");
  }
  return true;
}

}  // namespace jacobi
