#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "jacobi/analysis.hpp"
#include "jacobi/errors.hpp"
#include "jacobi/parser.hpp"

using namespace jacobi;

namespace {

const std::string kData = JACOBI_DATA_DIR;

OdeSystem brusselator() { return load_system_file(kData + "/brusselator.ode"); }

Assignment at(std::initializer_list<std::pair<const char*, Rational>> xs) {
  Assignment a;
  for (const auto& [n, v] : xs) a[Variable::named(n)] = v;
  return a;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::Numerical;
}

Rational r0(const Rational& a, const Rational& b) { return (a - b) * (a - b) - 2 * b + 1; }

}  // namespace

TEST(JacobiCount, BrusselatorStablePoint) {
  const auto rep = jacobi_count(brusselator(), at({{"a", 1}, {"b", 2}}));
  ASSERT_EQ(rep.fixed_points.size(), 1u);
  EXPECT_EQ(rep.stable_count, 1u);
  EXPECT_FALSE(rep.parity_shortcut_used);
  const auto& fp = rep.fixed_points[0];
  EXPECT_EQ(fp.classification, Classification::JacobiStable);
  EXPECT_EQ(*fp.box.rational_point(), at({{"x", 1}, {"y", 2}}));
  EXPECT_EQ(fp.a_n_sign, Sign::Positive);
  EXPECT_EQ(fp.delta_signs, (std::vector<Sign>{Sign::Positive, Sign::Positive}));
  EXPECT_TRUE(jacobi_exists(brusselator(), at({{"a", 1}, {"b", 2}})));
}

TEST(JacobiCount, BrusselatorUnstablePoint) {
  const auto rep = jacobi_count(brusselator(), at({{"a", 3}, {"b", 1}}));
  ASSERT_EQ(rep.fixed_points.size(), 1u);
  EXPECT_EQ(rep.stable_count, 0u);
  EXPECT_EQ(rep.fixed_points[0].classification, Classification::JacobiUnstable);
  EXPECT_EQ(*rep.fixed_points[0].box.rational_point(), at({{"x", 1}, {"y", ratio(1, 3)}}));
  EXPECT_FALSE(jacobi_exists(brusselator(), at({{"a", 3}, {"b", 1}})));
}

// R0(2, 1) = 0: J = [[0, 2], [-1, -2]] has eigenvalues -1 +- i, so
// alpha^2 - beta^2 = 0 exactly.
TEST(JacobiCount, BrusselatorBoundaryPoint) {
  ASSERT_EQ(r0(2, 1), 0);
  const auto rep = jacobi_count(brusselator(), at({{"a", 2}, {"b", 1}}));
  ASSERT_EQ(rep.fixed_points.size(), 1u);
  EXPECT_EQ(rep.fixed_points[0].classification, Classification::Boundary);
  EXPECT_EQ(rep.stable_count, 0u);
  EXPECT_TRUE(rep.has_boundary());
}

TEST(JacobiCount, Preconditions) {
  EXPECT_EQ(kind_of([] { jacobi_count(brusselator(), at({{"a", -1}, {"b", 2}})); }), ErrorKind::AssumptionViolated);
  EXPECT_EQ(kind_of([] { jacobi_count(brusselator(), at({{"a", 1}})); }), ErrorKind::UnboundVariable);
  const auto plane = load_system("vars: x, y\nparams: a\ndx/dt = a*(x - y)\ndy/dt = x - y\n");
  EXPECT_EQ(kind_of([&] { jacobi_count(plane, at({{"a", 1}})); }), ErrorKind::NonIsolatedFixedPoints);
}

TEST(JacobiCount, StateAssumptionsFilter) {
  // Fixed points x = +-1; only x = 1 is admissible.
  const auto sys = load_system("vars: x, y\nassume: x > 0\ndx/dt = y\ndy/dt = 1 - x^2 - y\n");
  const auto rep = jacobi_count(sys, {});
  ASSERT_EQ(rep.fixed_points.size(), 2u);
  std::size_t violated = 0;
  for (const auto& p : rep.fixed_points) {
    if (p.classification != Classification::SideConditionViolated) continue;
    ++violated;
    EXPECT_EQ(p.box.sign_of(var("x")), Sign::Negative);
  }
  EXPECT_EQ(violated, 1u);
}

TEST(JacobiCount, OddDimensionParityShortcut) {
  // Planar part is a stable focus; the third equation does not matter.
  const auto sys = load_system("vars: x, y, z\ndx/dt = y\ndy/dt = -2*x - y\ndz/dt = -z + x\n");
  const auto rep = jacobi_count(sys, {});
  EXPECT_TRUE(rep.parity_shortcut_used);
  EXPECT_EQ(rep.stable_count, 0u);
  ASSERT_EQ(rep.fixed_points.size(), 1u);
  EXPECT_EQ(rep.fixed_points[0].classification, Classification::JacobiUnstable);
  EXPECT_FALSE(rep.fixed_points[0].a_n_sign.has_value());
  EXPECT_FALSE(jacobi_exists(sys, {}));
}

TEST(JacobiCount, CountAndExistsAgree) {
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b) {
      const auto mu = at({{"a", ratio(a, 2)}, {"b", ratio(b, 2)}});
      EXPECT_EQ(jacobi_exists(brusselator(), mu), jacobi_count(brusselator(), mu).stable_count >= 1);
    }
}

// Stable iff char_poly(J) = l^2 + a1 l + a2 has a complex pair -a1/2 +- i beta
// with alpha^2 < beta^2, i.e. 2 a2 - a1^2 > 0 (which forces a negative
// discriminant a1^2 - 4 a2 < 0).
TEST(JacobiCount, ComplexPairCriterionAgreesOnLinearSystems) {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
  int stable = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Rational m[4];
    for (auto& v : m) v = ratio(num(rng), den(rng));
    const Rational a1 = -(m[0] + m[3]), a2 = m[0] * m[3] - m[1] * m[2];
    if (a2 == 0) continue;  // non-isolated fixed points
    const std::string text = "vars: x, y\ndx/dt = (" + to_string(m[0]) + ")*x + (" + to_string(m[1]) + ")*y\ndy/dt = (" +
                             to_string(m[2]) + ")*x + (" + to_string(m[3]) + ")*y\n";
    const auto rep = jacobi_count(load_system(text), {});
    ASSERT_EQ(rep.fixed_points.size(), 1u);
    const Rational disc = a1 * a1 - 4 * a2;
    const Rational alpha2_minus_beta2 = a1 * a1 / 4 - (a2 - a1 * a1 / 4);
    const auto c = rep.fixed_points[0].classification;
    if (disc < 0 && alpha2_minus_beta2 < 0) {
      EXPECT_EQ(c, Classification::JacobiStable) << text;
      ++stable;
    } else if (alpha2_minus_beta2 == 0) {
      EXPECT_EQ(c, Classification::Boundary) << text;
    } else {
      EXPECT_NE(c, Classification::JacobiStable) << text;
    }
  }
  EXPECT_GT(stable, 5);
}

TEST(JacobiCount, LorenzStenfloOrigin) {
  const auto sys = load_system_file(kData + "/lorenz_stenflo.ode");
  const auto rep = jacobi_count(sys, at({{"a", -1}, {"b", -1}, {"c", 26}, {"d", ratio(3, 2)}}));
  ASSERT_EQ(rep.fixed_points.size(), 1u);
  EXPECT_EQ(*rep.fixed_points[0].box.rational_point(), at({{"x", 0}, {"y", 0}, {"z", 0}, {"w", 0}}));
  EXPECT_FALSE(rep.parity_shortcut_used);
  EXPECT_EQ(rep.fixed_points[0].delta_signs.size(), 4u);
}

TEST(Scan, BrusselatorMatchesR0) {
  const auto conds = load_conditions(kData + "/r0.cond");
  const std::vector<ScanAxis> axes{{"a", ratio(1, 4), 4, 6}, {"b", ratio(1, 4), 4, 6}};
  const auto res = scan_parameters(brusselator(), axes, {}, conds, 2);
  ASSERT_EQ(res.grid.size(), 49u);
  EXPECT_EQ(res.condition_names, std::vector<std::string>{"R0"});
  for (const auto& p : res.grid) {
    ASSERT_TRUE(p.error.empty()) << p.message;
    const Sign s = p.condition_signs.at(0);
    EXPECT_EQ(s, sign_of(r0(p.mu.at(Variable::named("a")), p.mu.at(Variable::named("b")))));
    if (s == Sign::Negative) EXPECT_EQ(*p.stable_count, 1u);
    if (s == Sign::Positive) EXPECT_EQ(*p.stable_count, 0u);
    EXPECT_EQ(p.boundary, s == Sign::Zero);
  }
  EXPECT_EQ(res.grid.front().mu.at(Variable::named("a")), ratio(1, 4));
  EXPECT_EQ(res.grid[1].mu.at(Variable::named("b")), ratio(1, 4) + ratio(15, 24));
}

TEST(Scan, SerialEqualsParallel) {
  const auto conds = load_conditions(kData + "/r0.cond");
  const std::vector<ScanAxis> axes{{"a", ratio(1, 2), 3, 5}, {"b", ratio(1, 3), 3, 4}};
  const auto s = scan_parameters(brusselator(), axes, {}, conds, 1);
  const auto p = scan_parameters(brusselator(), axes, {}, conds, 4);
  ASSERT_EQ(s.grid.size(), p.grid.size());
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    EXPECT_EQ(s.grid[i].mu, p.grid[i].mu);
    EXPECT_EQ(s.grid[i].stable_count, p.grid[i].stable_count);
    EXPECT_EQ(s.grid[i].boundary, p.grid[i].boundary);
    EXPECT_EQ(s.grid[i].error, p.grid[i].error);
    EXPECT_EQ(s.grid[i].condition_signs, p.grid[i].condition_signs);
  }
}

TEST(Scan, SinglePointAndBoundaryTag) {
  const auto res = scan_parameters(brusselator(), {{"a", 2, 2, 8}}, at({{"b", 1}}), {});
  ASSERT_EQ(res.grid.size(), 1u);
  EXPECT_TRUE(res.grid[0].boundary);
  EXPECT_EQ(res.grid[0].stable_count, jacobi_count(brusselator(), at({{"a", 2}, {"b", 1}})).stable_count);
}

TEST(Scan, RecordsErrorsPerPoint) {
  const auto sys = load_system("vars: x, y\nparams: a\ndx/dt = a*x - a*y\ndy/dt = x + y\n");
  const auto res = scan_parameters(sys, {{"a", -1, 1, 2}}, {}, {});
  ASSERT_EQ(res.grid.size(), 3u);
  EXPECT_TRUE(res.grid[0].stable_count.has_value());
  EXPECT_EQ(res.grid[1].error, "non_isolated_fixed_points");
  EXPECT_FALSE(res.grid[1].stable_count.has_value());
}

TEST(Scan, InvalidBoxes) {
  EXPECT_EQ(kind_of([] { scan_parameters(brusselator(), {{"a", 2, 1, 4}, {"b", 1, 2, 4}}, {}, {}); }),
            ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { scan_parameters(brusselator(), {{"a", 1, 2, 0}, {"b", 1, 2, 4}}, {}, {}); }),
            ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { scan_parameters(brusselator(), {{"a", 1, 2, 4}}, {}, {}); }), ErrorKind::UnboundVariable);
  EXPECT_EQ(kind_of([] { scan_parameters(brusselator(), {{"q", 1, 2, 4}}, {}, {}); }), ErrorKind::UnknownVariable);
}

TEST(Conditions, FixtureConstantTerms) {
  const auto r = load_conditions(kData + "/r_conditions.cond");
  ASSERT_EQ(r.size(), 17u);
  EXPECT_EQ(r[1].name, "R1");
  EXPECT_EQ(r[1].poly.evaluate(at({{"k2", 0}})), Rational("98410095984901"));
  EXPECT_EQ(r[1].poly.total_degree(), 4u);
  const auto t = load_conditions(kData + "/t_conditions.cond");
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t[0].poly.evaluate(at({{"a", 0}, {"b", 0}})), 729);
  EXPECT_EQ(t[0].poly.total_degree(), 15u);

  const auto signs = check_conditions({r[0]}, at({{"a", 1}, {"b", 2}}));
  EXPECT_EQ(signs[0], (std::pair<std::string, Sign>{"R0", Sign::Negative}));
  EXPECT_EQ(check_conditions({r[1]}, at({{"k2", 0}}))[0].second, Sign::Positive);
  EXPECT_EQ(kind_of([&] { check_conditions({r[0]}, at({{"a", 1}})); }), ErrorKind::UnboundVariable);
}

TEST(Conditions, Parsing) {
  EXPECT_TRUE(parse_conditions("").empty());
  EXPECT_TRUE(parse_conditions("# only a comment\n\n").empty());
  const auto c = parse_conditions("R0 = (a-b)^2 - 2*b + 1  # trailing\nS = 3\n");
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].poly, parse_polynomial("a^2 - 2*a*b + b^2 - 2*b + 1", {"a", "b"}));
  EXPECT_EQ(c[1].poly, Poly(3));

  auto line_of = [](std::string_view text) -> std::size_t {
    try {
      parse_conditions(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("A = a\n\nB = a +* b\n"), 3u);
  EXPECT_EQ(line_of("A = a\nno equals sign\n"), 2u);
  EXPECT_EQ(line_of("A = a/b\n"), 1u);
  EXPECT_EQ(line_of("A = a\nA = b\n"), 2u);
  EXPECT_EQ(line_of("1x = a\n"), 1u);
}

TEST(Qe, BrusselatorProblem) {
  const auto qe = emit_qe_problem(brusselator());
  EXPECT_EQ(qe.free_vars, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(qe.quantified_vars, (std::vector<std::string>{"b1", "c1", "x", "y"}));
  ASSERT_EQ(qe.equations.size(), 4u);
  const std::vector<std::string> ids{"a", "b", "x", "y", "b1", "c1"};
  EXPECT_EQ(qe.equations[3], parse_polynomial("a*x^2 - c1", ids));
  EXPECT_EQ(qe.equations[2], parse_polynomial("a*x^2 - 2*a*x*y + b + 1 - b1", ids));
  EXPECT_TRUE(qe.inequations.empty());
  ASSERT_EQ(qe.inequalities.size(), 1u);
  EXPECT_EQ(qe.inequalities[0], parse_polynomial("2*c1 - b1^2", ids));
  EXPECT_EQ(qe.assumptions.size(), 2u);
}

TEST(Qe, SmtlibRoundTrip) {
  const auto qe = emit_qe_problem(brusselator());
  const std::string smt = to_smtlib(qe);
  EXPECT_NE(smt.find("(> (- (* 2 c1) (* b1 b1)) 0)"), std::string::npos) << smt;
  const auto script = read_smtlib(smt);
  EXPECT_EQ(script.logic, "NRA");
  EXPECT_EQ(script.constants, qe.free_vars);
  ASSERT_EQ(script.exists_blocks.size(), 1u);
  EXPECT_EQ(script.exists_blocks[0], qe.quantified_vars);
  EXPECT_TRUE(script.check_sat);

  std::vector<Poly> eqs, gts;
  for (const auto& a : script.atoms) (a.relation == "=" ? eqs : gts).push_back(a.lhs);
  EXPECT_EQ(eqs, qe.equations);
  const std::vector<std::string> ids{"a", "b", "b1", "c1"};
  EXPECT_EQ(gts, (std::vector<Poly>{parse_polynomial("2*c1 - b1^2", ids), var("a"), var("b")}));
}

TEST(Qe, ReaderRejectsMalformedInput) {
  EXPECT_THROW(read_smtlib("(assert (> x 0))"), ParseError);
  EXPECT_THROW(read_smtlib("(declare-const x Real)(assert (> x 0)"), ParseError);
  EXPECT_THROW(read_smtlib("(declare-const x Real)(assert (> (exp x) 0))"), ParseError);
  const auto s = read_smtlib("(declare-const x Real)(assert (and (<= (/ x 2) (- 3)) (distinct x 1)))");
  ASSERT_EQ(s.atoms.size(), 2u);
  EXPECT_EQ(s.atoms[0].lhs, parse_polynomial("x/2 + 3", {"x"}));
}

TEST(Qe, LorenzStenfloHasTwoFactors) {
  const auto qe = emit_qe_problem(load_system_file(kData + "/lorenz_stenflo.ode"));
  EXPECT_EQ(qe.quantified_vars.size(), 8u);
  EXPECT_EQ(qe.equations.size(), 4u + 4u);
  EXPECT_EQ(qe.inequalities.size(), 2u);
  EXPECT_EQ(read_smtlib(to_smtlib(qe)).exists_blocks.at(0).size(), 8u);
}

TEST(Qe, CenterIsSatisfiedAtOrigin) {
  const auto qe = emit_qe_problem(load_system("vars: x, y\ndx/dt = y\ndy/dt = -x\n"));
  const Assignment w = at({{"x", 0}, {"y", 0}, {"b1", 0}, {"c1", 1}});
  for (const auto& e : qe.equations) EXPECT_EQ(e.evaluate(w), 0);
  for (const auto& g : qe.inequalities) EXPECT_GT(g.evaluate(w), 0);
}

TEST(Qe, OddDimensionAndNameClash) {
  const auto odd = emit_qe_problem(load_system("vars: x\nparams: k\ndx/dt = -k*x\n"));
  EXPECT_TRUE(odd.always_unstable);
  const auto s = read_smtlib(to_smtlib(odd));
  ASSERT_EQ(s.atoms.size(), 1u);
  EXPECT_EQ(s.atoms[0].relation, "false");
  EXPECT_NE(to_readable(odd).find("odd dimension"), std::string::npos);

  const auto clash = emit_qe_problem(load_system("vars: x, y\nparams: b1\ndx/dt = y\ndy/dt = -b1*x\n"));
  EXPECT_EQ(clash.quantified_vars[0], "b_1");
  EXPECT_EQ(read_smtlib(to_smtlib(clash)).exists_blocks.size(), 1u);
}

TEST(Qe, ReadableLayout) {
  const std::string text = to_readable(emit_qe_problem(brusselator()));
  EXPECT_EQ(text.rfind("exists b1 exists c1 exists x exists y [", 0), 0u) << text;
  EXPECT_NE(text.find("a > 0"), std::string::npos);
  EXPECT_NE(text.find("free: a, b"), std::string::npos);
}

TEST(SemiAlgebraic, Brusselator) {
  const std::string text = emit_semialgebraic(brusselator());
  const std::vector<std::string> ids{"a", "b", "x", "y"};
  auto has = [&](const std::string& label, const std::string& expr) {
    return text.find(label + " " + parse_polynomial(expr, ids).to_string() + "\n") != std::string::npos;
  };
  EXPECT_TRUE(has("gt:", "a^2*x^4")) << text;
  EXPECT_TRUE(has("gt:", "-a^2*x^4 + 4*a^2*x^3*y - 4*a^2*x^2*y^2 - 2*a*b*x^2 + 4*a*b*x*y + 4*a*x*y - b^2 - 2*b - 1"));
  EXPECT_TRUE(has("gt:", "a"));
  EXPECT_TRUE(has("eq:", "a*x^2*y - b*x - x + 1"));
  EXPECT_EQ(text.find("neq:"), std::string::npos);
  EXPECT_NE(text.find("vars: x, y\nparams: a, b\n"), std::string::npos);
}

TEST(SemiAlgebraic, CdcSideConditionsAndOddHeader) {
  const std::string text = emit_semialgebraic(load_system_file(kData + "/cdc2wee1_g11.ode"));
  EXPECT_NE(text.find("neq: 4*y + 5\n"), std::string::npos) << text;
  EXPECT_NE(text.find("neq: x + k2\n"), std::string::npos) << text;
  const std::string odd = emit_semialgebraic(load_system("vars: x\ndx/dt = -x\n"));
  EXPECT_NE(odd.find("odd dimension"), std::string::npos);
  // J^2 = (1): lambda - 1 gives a_1 = Delta_1 = -1.
  EXPECT_NE(odd.find("gt: -1\n"), std::string::npos) << odd;
}
