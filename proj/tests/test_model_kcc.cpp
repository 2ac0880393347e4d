#include <gtest/gtest.h>

#include <random>

#include "jacobi/errors.hpp"
#include "jacobi/kcc.hpp"
#include "jacobi/ode_model.hpp"
#include "jacobi/parser.hpp"

using namespace jacobi;

namespace {

const char* kBrusselator = R"(vars: x, y
params: a, b
assume: a > 0, b > 0
dx/dt = 1 - (b+1)*x + a*x^2*y
dy/dt = b*x - a*x^2*y
)";

OdeSystem data_system(const std::string& name) { return load_system_file(std::string(JACOBI_DATA_DIR) + "/" + name); }

RationalFunction expr(const OdeSystem& sys, std::string_view s, const std::vector<std::string>& extra = {}) {
  std::vector<std::string> ids = sys.state_names();
  ids.insert(ids.end(), sys.param_names().begin(), sys.param_names().end());
  ids.insert(ids.end(), extra.begin(), extra.end());
  return parse_expression(s, ids);
}

SymbolicMatrix matrix_of(const OdeSystem& sys, const std::vector<std::vector<std::string>>& rows,
                         const std::vector<std::string>& extra = {}) {
  SymbolicMatrix m(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = expr(sys, rows[i][j], extra);
  return m;
}

Matrix<Rational> evaluate(const SymbolicMatrix& m, const Assignment& pt) {
  return m.map([&](const RationalFunction& f) { return f.evaluate(pt); });
}

}  // namespace

TEST(OdeModel, LoadsBrusselator) {
  const auto sys = load_system(kBrusselator);
  EXPECT_EQ(sys.dimension(), 2u);
  EXPECT_EQ(sys.param_names(), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(sys.assumptions().size(), 2u);
  EXPECT_EQ(sys.rhs()[0], expr(sys, "a*x^2*y - b*x - x + 1"));
}

TEST(OdeModel, LoadsLorenzStenflo) {
  const auto sys = data_system("lorenz_stenflo.ode");
  EXPECT_EQ(sys.dimension(), 4u);
  EXPECT_EQ(sys.param_names(), (std::vector<std::string>{"a", "b", "c", "d"}));
}

TEST(OdeModel, RejectsBadFiles) {
  EXPECT_THROW(load_system("vars: x\nparams: x\ndx/dt = x\n"), Error);
  EXPECT_THROW(load_system("vars: x, y\ndx/dt = y\n"), Error);
  EXPECT_THROW(load_system("vars: x, x\ndx/dt = x\n"), Error);
  EXPECT_THROW(load_system("vars: x\ndx/dt = z\n"), Error);
  EXPECT_THROW(load_system("vars: x\ndx/dt = x +\n"), ParseError);
  EXPECT_THROW(load_system("vars: x\nparams: a\nassume: a >> 0\ndx/dt = a\n"), ParseError);
}

TEST(OdeModel, TextRoundTrip) {
  const auto sys = load_system(kBrusselator);
  const auto again = load_system(sys.to_text());
  EXPECT_EQ(again.rhs(), sys.rhs());
  EXPECT_EQ(again.assumptions().size(), sys.assumptions().size());
}

TEST(OdeModel, BrusselatorJacobian) {
  const auto sys = load_system(kBrusselator);
  EXPECT_EQ(jacobian(sys), matrix_of(sys, {{"2*a*x*y-b-1", "a*x^2"}, {"-2*a*x*y+b", "-a*x^2"}}));
}

TEST(OdeModel, ConstantRhsHasZeroJacobian) {
  const auto sys = load_system("vars: x, y\nparams: a\ndx/dt = 3\ndy/dt = a\n");
  EXPECT_EQ(jacobian(sys), SymbolicMatrix(2, 2));
}

TEST(OdeModel, Cdc2JacobianHasSquaredDenominators) {
  const auto sys = data_system("cdc2wee1_g11.ode");
  const auto j = jacobian(sys);
  const Poly dx = expr(sys, "4*y + 5").numer(), dy = expr(sys, "k2 + x").numer();
  // d/dy of the first rhs: clearing (4y+5)^2 leaves a polynomial.
  EXPECT_TRUE((j(0, 1) * RationalFunction(dx.pow(2))).is_polynomial());
  EXPECT_FALSE((j(0, 1) * RationalFunction(dx)).is_polynomial());
  EXPECT_TRUE((j(1, 0) * RationalFunction(dy.pow(2))).is_polynomial());
  EXPECT_FALSE((j(1, 0) * RationalFunction(dy)).is_polynomial());
}

TEST(OdeModel, FixedPointSystems) {
  const auto bru = fixed_point_system(load_system(kBrusselator));
  const auto sys = load_system(kBrusselator);
  EXPECT_EQ(bru.equations[0], expr(sys, "1-(b+1)*x+a*x^2*y").numer());
  EXPECT_EQ(bru.equations[1], expr(sys, "b*x-a*x^2*y").numer());
  EXPECT_TRUE(bru.side_conditions.empty());

  const auto cdc = data_system("cdc2wee1_g11.ode");
  const auto fp = fixed_point_system(cdc);
  ASSERT_EQ(fp.side_conditions.size(), 2u);
  // Stored primitive: 30 + 24y is kept as 4y + 5.
  EXPECT_EQ(fp.side_conditions[0], expr(cdc, "4*y + 5").numer());
  EXPECT_EQ(fp.side_conditions[1], expr(cdc, "k2 + x").numer());
  // Numerators: (1 - x)(30 + 24y) - 4800xy and (1 - y)(k2 + x) - 10xy up to scale.
  const Poly n0 = expr(cdc, "(1-x)*(30+24*y) - 4800*x*y").numer();
  const Poly n1 = expr(cdc, "(1-y)*(k2+x) - 10*x*y").numer();
  EXPECT_EQ(fp.equations[0].primitive(), n0.primitive());
  EXPECT_EQ(fp.equations[1].primitive(), n1.primitive());

  const auto poly = fixed_point_system(data_system("lorenz_stenflo.ode"));
  EXPECT_TRUE(poly.side_conditions.empty());
}

TEST(OdeModel, MatrixSquare) {
  Matrix<Rational> m(2, 2);
  m(0, 1) = 1;
  m(1, 0) = -2;
  Matrix<Rational> expect(2, 2);
  expect(0, 0) = expect(1, 1) = -2;
  EXPECT_EQ(matrix_square(m), expect);
  EXPECT_EQ(matrix_square(Matrix<Rational>::identity(2)), Matrix<Rational>::identity(2));
  EXPECT_THROW(matrix_square(Matrix<Rational>(2, 3)), Error);

  const auto sys = load_system(kBrusselator);
  const auto j2 = matrix_square(jacobian(sys));
  // trace(J^2) = -abar_1 from the worked Brusselator example.
  const auto abar1 = expr(sys,
                          "-a^2*x^4 + 4*a^2*x^3*y - 4*a^2*x^2*y^2 - 2*a*b*x^2 + 4*a*b*x*y"
                          " + 4*a*x*y - b^2 - 2*b - 1");
  EXPECT_EQ(j2.trace(), -abar1);
}

TEST(OdeModel, SpecializeCommutesWithJacobian) {
  for (const char* name : {"brusselator.ode", "cdc2wee1_g11.ode", "cdc2wee1_g22.ode", "lorenz_stenflo.ode"}) {
    const auto sys = data_system(name);
    Assignment mu;
    Rational v(3, 2);
    for (const auto& p : sys.param_vars()) {
      mu[p] = v;
      v += Rational(5, 7);
    }
    EXPECT_EQ(jacobian(sys.specialize(mu)), jacobian(sys).map([&](const RationalFunction& f) {
      return f.substitute(mu);
    })) << name;
  }
}

TEST(OdeModel, SquareAgreesWithNumericSquare) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-9, 9);
  for (const char* name : {"brusselator.ode", "cdc2wee1_g12.ode", "lorenz_stenflo.ode"}) {
    const auto sys = data_system(name);
    const auto j = jacobian(sys);
    const auto j2 = matrix_square(j);
    for (int trial = 0; trial < 10; ++trial) {
      Assignment pt;
      for (const auto& v : sys.state_vars()) pt[v] = ratio(d(rng), 3) + Rational(1, 11);
      for (const auto& v : sys.param_vars()) pt[v] = ratio(std::abs(d(rng)) + 1, 2);
      EXPECT_EQ(evaluate(j2, pt), matrix_square(evaluate(j, pt))) << name;
    }
  }
}

TEST(OdeModel, Assumptions) {
  const auto sys = load_system(kBrusselator);
  EXPECT_NO_THROW(sys.check_parameter_assumptions(sys.bind_parameters({{"a", 1}, {"b", 2}})));
  try {
    sys.check_parameter_assumptions(sys.bind_parameters({{"a", -1}, {"b", 2}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AssumptionViolated);
  }
  EXPECT_THROW(sys.bind_parameters({{"a", 1}}), Error);
  EXPECT_THROW(sys.bind_parameters({{"a", 1}, {"b", 2}, {"c", 3}}), Error);
}

// ---- KCC -------------------------------------------------------------------------------

TEST(Kcc, SprayOneDimensional) {
  const auto sys = load_system("vars: x\ndx/dt = x\n");
  const auto vel = VelocityVars::for_system(sys);
  EXPECT_EQ(vel.names, (std::vector<std::string>{"x_dot"}));
  EXPECT_EQ(spray_coefficients(sys, vel)[0], expr(sys, "-x_dot/2", vel.names));
}

TEST(Kcc, SprayBrusselator) {
  const auto sys = load_system(kBrusselator);
  const auto vel = VelocityVars::named(sys, {"y1", "y2"});
  const auto g = spray_coefficients(sys, vel);
  EXPECT_EQ(g[0], expr(sys, "-((2*a*x*y-b-1)*y1 + a*x^2*y2)/2", vel.names));
  EXPECT_EQ(g[1], expr(sys, "-((-2*a*x*y+b)*y1 - a*x^2*y2)/2", vel.names));
  EXPECT_THROW(VelocityVars::named(sys, {"y1", "a"}), Error);
  EXPECT_THROW(VelocityVars::named(sys, {"y1"}), Error);
}

TEST(Kcc, ConstantSystemHasZeroSpray) {
  const auto sys = load_system("vars: x, y\ndx/dt = 1\ndy/dt = -2\n");
  const auto vel = VelocityVars::for_system(sys);
  for (const auto& g : spray_coefficients(sys, vel)) EXPECT_TRUE(g.is_zero());
  EXPECT_EQ(nonlinear_connection(spray_coefficients(sys, vel), vel), SymbolicMatrix(2, 2));
}

TEST(Kcc, VelocityNamesAvoidClashes) {
  const auto sys = load_system("vars: x\nparams: x_dot\ndx/dt = x_dot*x\n");
  EXPECT_EQ(VelocityVars::for_system(sys).names, (std::vector<std::string>{"x_dot_"}));
}

TEST(Kcc, ConnectionIsMinusHalfJacobian) {
  for (const char* name : {"brusselator.ode", "cdc2wee1_g11.ode", "cdc2wee1_g21.ode", "lorenz_stenflo.ode"}) {
    const auto sys = data_system(name);
    const auto vel = VelocityVars::for_system(sys);
    const auto k = kcc_objects(sys, vel);
    EXPECT_EQ(k.connection, jacobian(sys).map([](const RationalFunction& f) {
      return f * RationalFunction(Rational(-1, 2));
    })) << name;
    EXPECT_TRUE(k.berwald_is_zero) << name;
    for (std::size_t i = 0; i < k.spray.size(); ++i) EXPECT_EQ(first_invariant(sys, vel)[i], k.spray[i]) << name;
  }
}

TEST(Kcc, CurvatureClosedFormMatchesDefinition) {
  for (const char* name : {"brusselator.ode", "cdc2wee1_g11.ode", "lorenz_stenflo.ode"}) {
    const auto sys = data_system(name);
    const auto vel = VelocityVars::for_system(sys);
    EXPECT_EQ(deviation_curvature(sys, vel), deviation_curvature_closed_form(sys, vel)) << name;
  }
}

TEST(Kcc, CurvatureExamples) {
  const auto lin = load_system("vars: x, y\ndx/dt = 2*x - y\ndy/dt = 3*x + y/2\n");
  const auto vel = VelocityVars::for_system(lin);
  EXPECT_EQ(deviation_curvature(lin, vel),
            matrix_square(jacobian(lin)).map([](const RationalFunction& f) { return f * RationalFunction(Rational(1, 4)); }));

  const auto sq = load_system("vars: x\ndx/dt = x^2\n");
  const auto v1 = VelocityVars::for_system(sq);
  EXPECT_EQ(deviation_curvature(sq, v1)(0, 0), expr(sq, "x_dot + x^2", v1.names));
}

TEST(Kcc, CurvatureIdentityAtFixedPoints) {
  const auto bru = load_system(kBrusselator);
  EXPECT_TRUE(verify_curvature_identity(bru, SymbolicFixedPoint{{expr(bru, "x - 1").numer(), expr(bru, "a*y - b").numer()},
                                                                {"x", "y"}}));
  const auto lin = load_system("vars: x, y\ndx/dt = 2*x - y\ndy/dt = 3*x + y/2\n");
  EXPECT_TRUE(verify_curvature_identity(lin, Assignment{{Variable::named("x"), 0}, {Variable::named("y"), 0}}));

  Assignment not_fixed{{Variable::named("x"), 1}, {Variable::named("y"), 3}, {Variable::named("a"), 1},
                       {Variable::named("b"), 1}};
  try {
    verify_curvature_identity(bru, not_fixed);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotFixedPoint);
  }
  Assignment fixed{{Variable::named("x"), 1}, {Variable::named("y"), 2}, {Variable::named("a"), 1},
                   {Variable::named("b"), 2}};
  EXPECT_TRUE(verify_curvature_identity(bru, fixed));
  EXPECT_THROW(verify_curvature_identity(bru, SymbolicFixedPoint{{expr(bru, "x - 2").numer(), expr(bru, "a*y - b").numer()},
                                                                 {"x", "y"}}),
               Error);
}

TEST(Kcc, LorenzStenfloIdentityAtOrigin) {
  const auto sys = data_system("lorenz_stenflo.ode");
  Assignment pt;
  for (const auto& v : sys.state_vars()) pt[v] = 0;
  pt[Variable::named("a")] = -1;
  pt[Variable::named("b")] = -1;
  pt[Variable::named("c")] = 26;
  pt[Variable::named("d")] = Rational(3, 2);
  EXPECT_TRUE(verify_curvature_identity(sys, pt));
}
