#include <gtest/gtest.h>

#include <random>

#include "jacobi/errors.hpp"
#include "jacobi/interval.hpp"
#include "jacobi/parser.hpp"
#include "jacobi/poly.hpp"
#include "jacobi/rational_function.hpp"
#include "jacobi/upoly.hpp"

using namespace jacobi;

namespace {

const std::vector<std::string> kXY{"x", "y"};
const std::vector<std::string> kAB{"a", "b"};

RationalFunction rf(std::string_view s) { return parse_expression(s, kXY, kAB); }
Poly pp(std::string_view s) { return parse_polynomial(s, {"x", "y", "z", "w", "a", "b"}); }
Rational q(const char* s) { return parse_rational(s); }

Poly random_poly(std::mt19937& rng, int vars, int max_deg, int terms) {
  static const char* names[] = {"x", "y", "z", "w"};
  std::uniform_int_distribution<int> coeff(-6, 6), deg(0, max_deg);
  Poly p;
  for (int t = 0; t < terms; ++t) {
    Poly m(coeff(rng));
    int budget = max_deg;
    for (int v = 0; v < vars && budget > 0; ++v) {
      const int e = std::uniform_int_distribution<int>(0, budget)(rng);
      budget -= e;
      m *= var(names[v]).pow(e);
    }
    p += m;
  }
  (void)deg;
  return p;
}

}  // namespace

TEST(Rational, Canonical) {
  EXPECT_EQ(to_string(q("6/4")), "3/2");
  EXPECT_EQ(to_string(q("-0/5")), "0");
  EXPECT_THROW(q("1/0"), Error);
  EXPECT_THROW(q("1/x"), ParseError);
  EXPECT_EQ(simplest_between(q("1/3"), q("1/2")), q("1/2"));
  EXPECT_EQ(simplest_between(q("3/10"), q("2/5")), q("1/3"));
  EXPECT_EQ(simplest_between(q("-7/2"), q("-13/4")), q("-7/2"));
}

TEST(Parser, Brusselator) {
  const auto f = rf("1 - (b+1)*x + a*x^2*y");
  EXPECT_TRUE(f.is_polynomial());
  EXPECT_EQ(f.numer(), pp("a*x^2*y - b*x - x + 1"));
  EXPECT_EQ(f.denom(), Poly(1));
}

TEST(Parser, CancelsCommonFactors) {
  EXPECT_EQ(rf("x/1"), RationalFunction(var("x")));
  const auto f = rf("(x^2-1)/(x-1)");
  EXPECT_EQ(f.numer(), pp("x + 1"));
  EXPECT_EQ(f.denom(), Poly(1));
  // multiply back
  EXPECT_EQ(f.numer() * pp("x - 1"), pp("x^2 - 1"));
}

TEST(Parser, LiteralsAndPrecedence) {
  EXPECT_EQ(rf("1/2/3"), RationalFunction(q("1/6")));
  EXPECT_EQ(rf("2/3^2"), RationalFunction(q("2/9")));
  EXPECT_EQ(rf("-3/4*x"), RationalFunction(pp("x").scaled(q("-3/4"))));
  EXPECT_EQ(rf("x - y - 1"), RationalFunction(pp("x - y - 1")));
  EXPECT_EQ(rf("-x^2"), RationalFunction(-pp("x^2")));
}

TEST(Parser, Errors) {
  try {
    rf("x + * y");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  try {
    rf("x + q");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UndeclaredIdentifier);
  }
  try {
    rf("x/0");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroDenominator);
  }
  EXPECT_THROW(rf("(x + 1"), ParseError);
  EXPECT_THROW(rf("x y"), ParseError);
}

TEST(Parser, PrintReparseRoundTrip) {
  for (const char* s : {"1 - (b+1)*x + a*x^2*y", "(x^2-1)/(x-1)", "x/(a + x^2)", "-3/4*x^2*y + 1/7",
                        "(a*x - 2*b)/(3*y^2 + x*y - 1/2)", "0", "5/3"}) {
    const auto f = rf(s);
    EXPECT_EQ(rf(f.to_string()), f) << s << " printed as " << f.to_string();
  }
}

TEST(Differentiate, Examples) {
  EXPECT_EQ(differentiate(rf("a*x^2*y"), "y"), rf("a*x^2"));
  EXPECT_TRUE(differentiate(rf("a*b + 3"), "x").is_zero());
  const auto k2 = Variable::named("k2");
  (void)k2;
  const auto f = parse_expression("x/(k2 + x^2)", {"x"}, {"k2"});
  const auto d = differentiate(f, "x");
  EXPECT_EQ(d, parse_expression("(k2 - x^2)/(k2 + x^2)^2", {"x"}, {"k2"}));
  // clearing denominators
  EXPECT_EQ(d.numer() * parse_polynomial("(k2 + x^2)^2", {"x", "k2"}),
            parse_polynomial("k2 - x^2", {"x", "k2"}) * d.denom());
  EXPECT_THROW(differentiate(f, "no_such_variable_anywhere"), Error);
}

TEST(Evaluate, Exact) {
  const auto f1 = rf("1 - (b+1)*x + a*x^2*y");
  const Assignment pt{{Variable::named("x"), 1}, {Variable::named("y"), 2}, {Variable::named("a"), 1},
                      {Variable::named("b"), 2}};
  EXPECT_EQ(f1.evaluate(pt), 0);
  EXPECT_EQ(rf("7/3").evaluate(pt), q("7/3"));
  try {
    rf("1/(x-1)").evaluate(pt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::VanishingDenominator);
  }
  EXPECT_THROW(rf("x").evaluate({}), Error);
}

TEST(IntervalEvaluate, Examples) {
  const auto x = Variable::named("x"), y = Variable::named("y");
  const Interval r1 = interval_evaluate(pp("x^2"), {{x, Interval(-1, 2)}});
  EXPECT_TRUE(r1.contains(Interval(0, 4)));
  EXPECT_EQ(interval_evaluate(Poly(), {}), Interval(0));
  const Interval r3 = interval_evaluate(pp("x*y"), {{x, Interval(1, 2)}, {y, Interval(-1, 1)}});
  EXPECT_TRUE(r3.contains(Interval(-2, 2)));
  EXPECT_THROW(interval_evaluate(pp("x*y"), {{x, Interval(1, 2)}}), Error);
}

TEST(IntervalEvaluate, SoundOnRandomSamples) {
  std::mt19937 rng(7);
  const Variable vs[] = {Variable::named("x"), Variable::named("y"), Variable::named("z")};
  std::uniform_int_distribution<int> lo(-8, 8), wid(0, 8), den(1, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const Poly p = random_poly(rng, 3, 4, 5);
    Box box;
    Assignment sample;
    for (auto v : vs) {
      Rational a(lo(rng), den(rng));
      a.canonicalize();
      Rational b = a + ratio(wid(rng), den(rng));
      b.canonicalize();
      box[v] = Interval(a, b);
      Rational t(std::uniform_int_distribution<int>(0, 10)(rng), 10);
      t.canonicalize();
      sample[v] = a + t * (b - a);
    }
    EXPECT_TRUE(interval_evaluate(p, box).contains(p.evaluate(sample))) << p;
  }
}

TEST(PolyRing, Axioms) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const Poly p = random_poly(rng, 4, 4, 4), r = random_poly(rng, 4, 4, 4), s = random_poly(rng, 4, 4, 4);
    EXPECT_EQ((p + r) + s, p + (r + s));
    EXPECT_EQ(p * (r + s), p * r + p * s);
    EXPECT_EQ(p * r, r * p);
    EXPECT_TRUE((p - p).is_zero());
  }
}

TEST(PolyRing, EvaluationHomomorphism) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const Poly p = random_poly(rng, 4, 5, 5), r = random_poly(rng, 4, 5, 5);
    Assignment pt;
    for (const char* n : {"x", "y", "z", "w"}) {
      Rational v(std::uniform_int_distribution<int>(-9, 9)(rng), std::uniform_int_distribution<int>(1, 5)(rng));
      v.canonicalize();
      pt[Variable::named(n)] = v;
    }
    EXPECT_EQ((p * r).evaluate(pt), p.evaluate(pt) * r.evaluate(pt));
  }
}

TEST(PolyRing, DerivativeRules) {
  std::mt19937 rng(17);
  const auto x = Variable::named("x"), z = Variable::named("z");
  for (int trial = 0; trial < 50; ++trial) {
    const Poly p = random_poly(rng, 4, 6, 5), r = random_poly(rng, 4, 6, 5);
    EXPECT_EQ((p + r).derivative(x), p.derivative(x) + r.derivative(x));
    EXPECT_EQ((p * r).derivative(z), p.derivative(z) * r + p * r.derivative(z));
  }
}

TEST(PolyGcd, Basics) {
  const Poly g = gcd(pp("x^2 - 1"), pp("x^2 + 2*x + 1"));
  EXPECT_EQ(g, pp("x + 1"));
  EXPECT_EQ(gcd(pp("a*x*y + a*b"), pp("x*y*z + b*z")), pp("x*y + b"));
  EXPECT_EQ(gcd(pp("x + y"), pp("x - y")), Poly(1));
  std::mt19937 rng(19);
  for (int trial = 0; trial < 25; ++trial) {
    const Poly f = random_poly(rng, 3, 3, 3) + Poly(1), a = random_poly(rng, 3, 3, 3), b = random_poly(rng, 3, 3, 3);
    if (a.is_zero() || b.is_zero()) continue;
    const Poly h = gcd(f * a, f * b);
    EXPECT_TRUE(divide_exact(h, f.primitive()).has_value()) << f << " | " << h;
  }
}

TEST(PolyPrint, GrlexOrder) {
  EXPECT_EQ(pp("1 + y + x + x^2*y").to_string(), "x^2*y + x + y + 1");
  EXPECT_EQ(pp("-3/4*x^2*y + 1").to_string(), "-3/4*x^2*y + 1");
}

TEST(UPoly, Squarefree) {
  const auto x = Variable::named("x");
  auto u = [&](const char* s) { return UPoly::from_poly(pp(s), x); };
  EXPECT_EQ(squarefree_part(u("(x-1)^2*(x+3)")), u("(x-1)*(x+3)"));
  EXPECT_EQ(squarefree_part(u("x^2-2")), u("x^2-2"));
  EXPECT_EQ(squarefree_part(u("x^4")), u("x"));
  const auto parts = squarefree_decomposition(u("(x-1)^2*(x+3)*(x^2+1)^3"));
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0].second, 1u);
  EXPECT_EQ(parts[0].first, u("x+3"));
  EXPECT_EQ(parts[1].first, u("x-1"));
  EXPECT_EQ(parts[2].first, u("x^2+1"));
  EXPECT_EQ(parts[2].second, 3u);
}
