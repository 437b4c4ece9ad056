#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "tazrp/errors.hpp"
#include "tazrp/polyring.hpp"

using namespace tazrp;

namespace {

Polynomial P(const char* text, std::size_t n) { return parse_polynomial(text, n); }

}  // namespace

TEST(Polyring, AddExamples) {
  EXPECT_EQ(P("w1+w2", 2) + P("w2", 2), P("w1+2*w2", 2));
  EXPECT_EQ(P("w1^2-w2", 2) + Polynomial(2), P("w1^2-w2", 2));
  EXPECT_EQ((P("w2^2", 2) + P("w1*w2", 2)).term_count(), 2u);
  EXPECT_TRUE((P("w1+w2", 2) - P("w2+w1", 2)).is_zero());
}

TEST(Polyring, MulExamples) {
  EXPECT_EQ(P("w1+w2", 3) * P("w1+w2+w3", 3), P("w1^2+2*w1*w2+w2^2+w1*w3+w2*w3", 3));
  EXPECT_EQ(P("3*w1-w2", 2) * Polynomial::constant(2, 1), P("3*w1-w2", 2));
  EXPECT_EQ(P("w2", 2) * P("w2", 2), P("w2^2", 2));
}

TEST(Polyring, MixedAmbientThrows) {
  EXPECT_THROW(P("w1", 1) + P("w1", 2), DimensionError);
  EXPECT_THROW(P("w1", 1) * P("w1", 2), DimensionError);
  EXPECT_THROW(eval(P("w1", 2), std::vector<Rational>{1}), DimensionError);
}

TEST(Polyring, ExactDivision) {
  EXPECT_EQ(exact_div_var(P("w2^2*w3", 3), 3), P("w2^2", 3));
  EXPECT_EQ(exact_div_var(P("w1*w2+w2^2", 2), 2), P("w1+w2", 2));
  EXPECT_THROW(exact_div_var(P("w1+w2", 2), 2), NotDivisible);
}

TEST(Polyring, Eval) {
  const std::vector<Rational> ones2{1, 1}, ones3{1, 1, 1}, w12{1, 2};
  EXPECT_EQ(eval(P("w1^2+w1*w2+w2^2", 2), ones2), 3);
  EXPECT_EQ(eval(P("(w1+w2)*(w1+w2+w3)", 3), ones3), 6);
  EXPECT_EQ(eval(P("w2^2", 2), w12), 4);
  const std::vector<double> wd{0.5, 2.0};
  EXPECT_DOUBLE_EQ(eval(P("w1*w2+3", 2), wd), 4.0);
}

TEST(Polyring, HomogeneousDegree) {
  EXPECT_EQ(homogeneous_degree(P("w1^2+w1*w2+w2^2", 2)), 2u);
  EXPECT_EQ(homogeneous_degree(P("w1*w2^3*w3^2*w4^3", 4)), 9u);
  EXPECT_FALSE(homogeneous_degree(P("w1+w2^2", 2)).has_value());
  EXPECT_THROW(homogeneous_degree(Polynomial(2)), InputError);
}

TEST(Polyring, CanonicalText) {
  EXPECT_EQ(P("w2*w1 + w1^2 + w2*w1", 2).to_string(), "w1^2+2*w1*w2");
  EXPECT_EQ(Polynomial(3).to_string(), "0");
  EXPECT_EQ(Polynomial::constant(2, 1).to_string(), "1");
  EXPECT_EQ(P("-w1+w2", 2).to_string(), "-w1+w2");
}

TEST(Polyring, ParseErrorsCarryPosition) {
  try {
    parse_polynomial("w1 + * w2", 2);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 5u);
  }
  EXPECT_THROW(parse_polynomial("w3", 2), ParseError);
  EXPECT_THROW(parse_polynomial("(w1", 2), ParseError);
  EXPECT_THROW(parse_polynomial("", 2), ParseError);
}

TEST(Polyring, Rationals) {
  EXPECT_EQ(parse_rational("-1/2"), Rational(-1, 2));
  EXPECT_EQ(parse_rational("0.125"), Rational(1, 8));
  EXPECT_EQ(parse_rational("1e-3"), Rational(1, 1000));
  EXPECT_EQ(parse_rational("010"), Rational(10));
  EXPECT_EQ(parse_rational("08/016"), Rational(1, 2));
  EXPECT_EQ(parse_polynomial("007*w1", 1), parse_polynomial("7*w1", 1));
  EXPECT_EQ(rational_to_string(Rational(6, 4)), "3/2");
  EXPECT_EQ(rational_to_string(Rational(5)), "5");
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
}

TEST(Polyring, LargeCoefficientsStayExact) {
  Polynomial p = P("w1+w2", 2);
  Polynomial q = Polynomial::constant(2, 1);
  for (int i = 0; i < 80; ++i) q *= p;
  const std::vector<Rational> ones{1, 1};
  EXPECT_EQ(eval(q, ones), Rational(Integer(1) << 80));
  EXPECT_EQ(q.coefficient(Monomial{40, 40}) > Integer(1) << 70, true);
}

class PolyringProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(PolyringProperties, RingAxioms) {
  std::mt19937_64 rng(GetParam());
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto a = oracle::random_polynomial(rng, n, 20, 3);
    const auto b = oracle::random_polynomial(rng, n, 20, 3);
    const auto c = oracle::random_polynomial(rng, n, 20, 3);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_TRUE((a - a).is_zero());
    Polynomial acc = a;
    acc.add_product(b, c);
    EXPECT_EQ(acc, a + b * c);
  }
}

TEST_P(PolyringProperties, DivisionRoundTrip) {
  std::mt19937_64 rng(GetParam() * 7 + 1);
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto p = oracle::random_polynomial(rng, n, 20, 3);
    for (std::size_t a = 1; a <= n; ++a) {
      EXPECT_EQ(exact_div_var(p * Polynomial::variable(n, a), a), p);
    }
  }
}

TEST_P(PolyringProperties, EvalIsHomomorphism) {
  std::mt19937_64 rng(GetParam() * 13 + 5);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto p = oracle::random_polynomial(rng, n, 12, 3);
    const auto q = oracle::random_polynomial(rng, n, 12, 3);
    std::vector<Rational> w;
    for (std::size_t v = 0; v < n; ++v) w.emplace_back(num(rng), den(rng));
    EXPECT_EQ(eval(p * q, w), eval(p, w) * eval(q, w));
    EXPECT_EQ(eval(p + q, w), eval(p, w) + eval(q, w));
  }
}

TEST_P(PolyringProperties, TextRoundTrip) {
  std::mt19937_64 rng(GetParam() * 31 + 3);
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto p = oracle::random_polynomial(rng, n, 20, 4);
    EXPECT_EQ(parse_polynomial(p.to_string(), n), p);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, PolyringProperties, ::testing::Range<std::uint64_t>(1, 26));
