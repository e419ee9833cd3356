#include <map>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ck/ideal.hpp"
#include "ck/parse.hpp"

using namespace ck;

namespace {

Scalar S(const char* text) { return parse_scalar(text); }
Poly P(const char* text) {
  Scalar s = parse_scalar(text);
  EXPECT_TRUE(s.is_polynomial());
  return s.numerator();
}

const std::vector<std::string> kAlpha = {"a1", "a2"};

IdealPoly A(const char* text) { return IdealPoly::from_scalar(parse_scalar(text), kAlpha); }

// Naive oracle: polynomials as maps from (symbol -> exponent) to rational,
// multiplied term by term without any shared machinery.
using NaiveMono = std::map<std::string, int>;
using NaivePoly = std::map<NaiveMono, Rational>;

NaivePoly to_naive(const Poly& p) {
  NaivePoly out;
  for (const auto& [e, c] : p.terms()) {
    NaiveMono m;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i]) m[p.vars()[i]] = e[i];
    }
    out[m] += c;
  }
  return out;
}

NaivePoly naive_mul(const NaivePoly& a, const NaivePoly& b) {
  NaivePoly out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      NaiveMono m = ma;
      for (const auto& [v, k] : mb) m[v] += k;
      out[m] += ca * cb;
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  }
  return out;
}

Poly random_poly(std::mt19937& rng, int terms) {
  static const std::vector<std::string> vars = {"w1", "w2", "c1", "a1"};
  std::uniform_int_distribution<int> coeff(-5, 5), expo(0, 2);
  Poly p;
  for (int t = 0; t < terms; ++t) {
    Exponents e(vars.size());
    for (auto& x : e) x = expo(rng);
    int c = coeff(rng);
    p += Poly::from_terms(vars, {{e, Rational(c == 0 ? 1 : c)}});
  }
  return p;
}

}  // namespace

TEST(Rational, LowestTerms) {
  Rational r(6, -4);
  EXPECT_EQ(r.to_string(), "-3/2");
  EXPECT_EQ(Rational(0, 7).to_string(), "0");
  EXPECT_EQ(Rational::parse("10/4"), Rational(5, 2));
  EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(Poly, DifferenceOfSquares) {
  Poly x = Poly::variable("x");
  EXPECT_EQ((x + Poly(1)) * (x - Poly(1)), x * x - Poly(1));
  EXPECT_EQ(((x + Poly(1)) * (x - Poly(1))).to_string(), "x^2 - 1");
}

TEST(Poly, BracketCoefficientProduct) {
  Poly prod = Poly::variable("w1") * Poly::variable("w2");
  EXPECT_EQ(prod.to_string(), "w1*w2");
  EXPECT_EQ(prod.vars(), (std::vector<std::string>{"w1", "w2"}));
}

TEST(Poly, CanonicalFormDropsUnusedVariables) {
  Poly p = P("w1 + w2") - P("w2");
  EXPECT_EQ(p, Poly::variable("w1"));
  EXPECT_EQ(p.vars().size(), 1u);
  EXPECT_TRUE((P("w1") - P("w1")).is_zero());
  EXPECT_EQ(Poly().to_string(), "0");
}

TEST(Poly, DisplayOrder) {
  EXPECT_EQ(P("w1 + 4*c1*w2*a1^2").to_string(), "4*w2*c1*a1^2 + w1");
}

TEST(Poly, RingAxiomsAgainstNaiveMultiplier) {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 60; ++trial) {
    Poly a = random_poly(rng, 5), b = random_poly(rng, 5), c = random_poly(rng, 5);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a + b, b + a);
    EXPECT_TRUE((a + (-a)).is_zero());
    EXPECT_EQ(to_naive(a * b), naive_mul(to_naive(a), to_naive(b)));
  }
}

TEST(Poly, GcdAndExactDivision) {
  Poly x = Poly::variable("w1"), y = Poly::variable("w2");
  Poly f = (x + y) * (x - Poly(2) * y);
  Poly g = (x + y) * (x * y + Poly(3));
  EXPECT_EQ(gcd(f, g), x + y);
  EXPECT_EQ(gcd(f.scaled(Rational(6)), f.scaled(Rational(-4))), f);
  EXPECT_EQ(gcd(x, y), Poly(1));
  EXPECT_EQ(*exact_divide(f, x + y), x - Poly(2) * y);
  EXPECT_FALSE(exact_divide(f, x + Poly(1)).has_value());
}

TEST(Poly, GcdRandomCommonFactor) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    Poly common = random_poly(rng, 3), a = random_poly(rng, 3), b = random_poly(rng, 3);
    if (common.is_zero() || a.is_zero() || b.is_zero()) continue;
    Poly g = gcd(common * a, common * b);
    EXPECT_TRUE(exact_divide(common * a, g).has_value());
    EXPECT_TRUE(exact_divide(common * b, g).has_value());
    EXPECT_TRUE(exact_divide(g, primitive_part(common)).has_value());
  }
}

TEST(Scalar, DivisionMatchesEquationForm) {
  Scalar q = S("-w1") / S("4*w2*c1");
  // The rational content lives in the numerator; the denominator is primitive.
  EXPECT_EQ(q.numerator().to_string(), "-1/4*w1");
  EXPECT_EQ(q.denominator().to_string(), "w2*c1");
  EXPECT_EQ(q * S("4*w2*c1"), S("-w1"));
  EXPECT_EQ(q, S("(-w1)/(4*w2*c1)"));
  EXPECT_EQ(q.to_string(), "(-1/4*w1)/(w2*c1)");
}

TEST(Scalar, SelfQuotientIsOne) {
  Scalar x = S("w1*c1 + 3");
  EXPECT_EQ(x / x, Scalar(1));
  EXPECT_TRUE((x / x).is_one());
  EXPECT_THROW(x / Scalar(), DivisionByZero);
}

TEST(Scalar, ReciprocalProductsAndEquivalence) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    Poly pa = random_poly(rng, 3), pb = random_poly(rng, 3), pc = random_poly(rng, 2);
    if (pa.is_zero() || pb.is_zero() || pc.is_zero()) continue;
    Scalar a(pa, pb), b(pb, pa), c(pc, pa);
    EXPECT_EQ(a * b, Scalar(1));
    // Cross-multiplication oracle on the unreduced representations.
    Scalar x = a + c, y = c + a;
    EXPECT_EQ(x.numerator() * y.denominator(), y.numerator() * x.denominator());
    EXPECT_EQ(x, y);
    Scalar z = (pa * pc + pb) / Scalar(pb * pa);
    EXPECT_EQ(z, Scalar(pc, pb) + Scalar(1) / Scalar(pa));
    EXPECT_EQ(a * (b + c), a * b + a * c);
  }
}

TEST(Scalar, SubstituteRational) {
  Scalar s = S("w1^2 / (w2 + 1)");
  EXPECT_EQ(s.substitute("w2", Scalar(1)), S("w1^2/2"));
  EXPECT_THROW(s.substitute("w2", Scalar(-1)), DivisionByZero);
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_scalar(""), ParseError);
  EXPECT_THROW(parse_scalar("w1 +"), ParseError);
  EXPECT_THROW(parse_scalar("(w1"), ParseError);
  EXPECT_THROW(parse_scalar("w1 $ 2"), ParseError);
  EXPECT_EQ(parse_scalar("\xE2\x88\x92" "1/2"), Scalar(Rational(-1, 2)));
}

TEST(Groebner, PrincipalIdealIsItsOwnBasis) {
  IdealPoly g = A("a1^2 + w1/(4*w2*c1)");
  RelationIdeal ideal = groebner_basis({g}, kAlpha);
  ASSERT_EQ(ideal.groebner.size(), 1u);
  EXPECT_EQ(ideal.groebner[0], g);
}

TEST(Groebner, MonomialIdeal) {
  RelationIdeal ideal = groebner_basis({A("a1"), A("a2")}, kAlpha);
  ASSERT_EQ(ideal.groebner.size(), 2u);
  EXPECT_EQ(ideal.groebner[0], A("a1"));
  EXPECT_EQ(ideal.groebner[1], A("a2"));
}

TEST(Groebner, RejectsTooManyUnknowns) {
  std::vector<std::string> four = {"a1", "a2", "a3", "a4"};
  EXPECT_THROW(groebner_basis({}, four), std::invalid_argument);
}

TEST(Groebner, ZeroGeneratorDropped) {
  RelationIdeal ideal = groebner_basis({IdealPoly(kAlpha), A("a1 - 2")}, kAlpha);
  EXPECT_EQ(ideal.generators.size(), 1u);
  EXPECT_EQ(ideal.groebner.size(), 1u);
}

TEST(Groebner, OneStepRewrite) {
  RelationIdeal ideal = groebner_basis({A("a1^2 - k")}, kAlpha);
  EXPECT_EQ(reduce_mod_ideal(A("a1^2"), ideal), A("k"));
}

class QuadraticSystem : public ::testing::Test {
 protected:
  IdealPoly first = A("4*w1*c1*a1^2 + c1*a2^2 + 8*w1*c2*a1*a2 + w2");
  IdealPoly second = A("4*w1*c2*a1^2 + c2*a2^2 + 2*c1*a1*a2");
  RelationIdeal ideal = groebner_basis({first, second}, kAlpha);
};

TEST_F(QuadraticSystem, GeneratorsReduceToZero) {
  for (const auto& g : ideal.generators) EXPECT_TRUE(reduce_mod_ideal(g, ideal).is_zero());
  EXPECT_FALSE(ideal.is_trivial());
}

TEST_F(QuadraticSystem, MultipleOfSecondGenerator) {
  IdealPoly p = A("8*w1^2*c2*a1^2 + 2*w1*c2*a2^2 + 4*w1*c1*a1*a2");
  EXPECT_EQ(p, second.scaled(S("2*w1")));
  EXPECT_TRUE(reduce_mod_ideal(p, ideal).is_zero());
}

TEST_F(QuadraticSystem, FirstGeneratorRightHandSide) {
  IdealPoly p = A("4*w1^2*c1*a1^2 + w1*c1*a2^2 + 8*w1^2*c2*a1*a2");
  // Explicit combination: p = w1 * first - w1*w2.
  EXPECT_EQ(p, first.scaled(S("w1")) - A("w1*w2"));
  EXPECT_EQ(reduce_mod_ideal(p, ideal), A("-w1*w2"));
}

TEST_F(QuadraticSystem, ReductionIdempotentAndSound) {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> small(-3, 3);
  std::vector<IdealPoly> monos = {A("1"), A("a1"), A("a2"), A("w1*a1"), A("c2*a2^2")};
  for (int trial = 0; trial < 20; ++trial) {
    IdealPoly h1(kAlpha), h2(kAlpha), extra(kAlpha);
    for (const auto& m : monos) {
      h1 += m.scaled(Scalar(small(rng)));
      h2 += m.scaled(Scalar(small(rng)));
      extra += m.scaled(Scalar(small(rng)));
    }
    IdealPoly q = h1 * first + h2 * second;
    EXPECT_TRUE(reduce_mod_ideal(q, ideal).is_zero());
    IdealPoly r = reduce_mod_ideal(q + extra, ideal);
    EXPECT_EQ(reduce_mod_ideal(r, ideal), r);
    EXPECT_EQ(r, reduce_mod_ideal(extra, ideal));
  }
}

TEST(IdealPoly, PrimitiveForm) {
  IdealPoly p = A("-(8*w1^2*c2*a1^2 + 2*w1*c2*a2^2 + 4*w1*c1*a1*a2)");
  EXPECT_EQ(p.primitive_form().to_string(), "4*w1*c2*a1^2 + 2*c1*a1*a2 + c2*a2^2");
  IdealPoly q = A("a1^2 + w1/(4*w2*c1)");
  EXPECT_EQ(q.primitive_form().to_string(), "4*w2*c1*a1^2 + w1");
  EXPECT_THROW(IdealPoly::from_scalar(S("1/a1"), kAlpha), std::invalid_argument);
}
