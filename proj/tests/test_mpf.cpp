#include <gtest/gtest.h>

#include "oracle.hpp"
#include "tazrp/errors.hpp"
#include "tazrp/markov.hpp"
#include "tazrp/mpf.hpp"

using namespace tazrp;

namespace {

Polynomial P(const char* text, std::size_t n) { return parse_polynomial(text, n); }
Configuration C(const char* text, std::size_t n) { return parse_configuration(text, n); }

std::vector<std::vector<int>> grid() {
  std::vector<std::vector<int>> out;
  for (int a = 1; a <= 2; ++a) {
    for (int b = 1; b <= 2; ++b) {
      out.push_back({a, b});
      for (int c = 1; c <= 2; ++c) out.push_back({a, b, c});
    }
  }
  return out;
}

}  // namespace

TEST(Mpf, TwoSpeciesTraceMatrix) {
  const char* sigmas[] = {"e|e|12", "e|2|1", "e|1|2"};
  const char* mus[] = {"e|e|1", "e|1|e", "1|e|e"};
  const char* expected[3][3] = {{"w1^2", "w1*w2", "w2^2"}, {"0", "w1*w2", "w2^2"}, {"w2^2", "0", "0"}};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      EXPECT_EQ(reduced_trace(C(mus[j], 1), C(sigmas[i], 2)), P(expected[i][j], 2)) << i << j;
    }
  }
}

TEST(Mpf, ThreeSpeciesTraceMatrix) {
  const auto sigma = C("e|123", 3);
  EXPECT_EQ(reduced_trace(C("12|e", 2), sigma), P("w3", 3));
  EXPECT_EQ(reduced_trace(C("1|2", 2), sigma), P("w2", 3));
  EXPECT_EQ(reduced_trace(C("2|1", 2), sigma), P("w1", 3));
  EXPECT_EQ(reduced_trace(C("e|12", 2), sigma), P("w1", 3));
}

TEST(Mpf, TabulatedProbabilities) {
  const auto s2 = steady_state_mpf(Sector(3, {1, 1}));
  EXPECT_EQ(s2.at(C("e|e|12", 2)), P("w1^2+w1*w2+w2^2", 2));
  EXPECT_EQ(s2.at(C("e|2|1", 2)), P("w2^2+w1*w2", 2));
  EXPECT_EQ(s2.at(C("e|1|2", 2)), P("w2^2", 2));

  const auto s3 = steady_state_mpf(Sector(2, {1, 1, 1}));
  EXPECT_EQ(s3.at(C("e|123", 3)), P("(w1+w2)*(w1+w2+w3)", 3));

  const auto s4 = steady_state_mpf(Sector(4, {1, 2, 1, 1}));
  EXPECT_EQ(s4.at(C("3|14|e|22", 4)), P("w2^2*w3^2*w4^2*(w1*w2*w4+w2*w3*w4+w1*w3*w4+w1*w2*w3)", 4));
}

TEST(Mpf, OneSpeciesIsConstant) {
  const auto ss = steady_state_mpf(Sector(3, {2}));
  EXPECT_EQ(ss.probs.size(), 6u);
  for (const auto& [c, p] : ss.probs) EXPECT_EQ(p, Polynomial::constant(1, 1));
}

TEST(Mpf, GoldenTables) {
  for (const auto& g : oracle::golden_tables()) {
    const auto ss = steady_state_mpf(g.sector);
    for (const auto& [c, p] : g.orbit) EXPECT_EQ(ss.at(c), p) << g.sector.to_string() << " " << format_configuration(c);
  }
}

TEST(Mpf, GoldenTablesCoverTheirSectors) {
  for (const auto& g : oracle::golden_tables()) {
    EXPECT_EQ(g.orbit.size(), g.sector.size()) << g.sector.to_string();
    EXPECT_TRUE(check_steady(g.sector, g.orbit).ok) << g.sector.to_string();
  }
}

TEST(Mpf, Normalization) {
  const auto a = normalization_check(steady_state_mpf(Sector(3, {1, 1})));
  EXPECT_TRUE(a.ok);
  EXPECT_EQ(a.total, 18);
  const auto b = normalization_check(steady_state_mpf(Sector(3, {2})));
  EXPECT_EQ(b.total, 6);
  const auto c = normalization_check(steady_state_mpf(Sector(3, {1, 1, 1})));
  EXPECT_TRUE(c.ok);
  EXPECT_EQ(c.expected, 180);
}

TEST(Mpf, InvariantsOnGrid) {
  for (const auto& m : grid()) {
    for (std::size_t L = 2; L <= 4; ++L) {
      const Sector s(L, m);
      const auto ss = steady_state_mpf(s);
      const auto h = build_generator(s);
      ASSERT_EQ(ss.probs.size(), s.size());
      EXPECT_TRUE(check_steady(h, ss.probs).ok) << s.to_string();
      EXPECT_TRUE(normalization_check(ss).ok) << s.to_string();
      for (const auto& [c, p] : ss.probs) {
        ASSERT_FALSE(p.is_zero());
        EXPECT_EQ(homogeneous_degree(p), (m.size() - 1) * (L - 1));
        EXPECT_TRUE(p.has_nonnegative_coefficients());
        EXPECT_EQ(ss.at(cyclic_shift(c)), p);
      }
    }
  }
}

TEST(Mpf, FourSpeciesTwoSites) {
  const Sector s(2, {1, 1, 1, 1});
  EXPECT_TRUE(check_steady(s, steady_state_mpf(s).probs).ok);
}

TEST(Mpf, AgreesWithDenseOracleAfterNormalization) {
  for (const auto& m : grid()) {
    for (std::size_t L = 2; L <= 3; ++L) {
      if (Sector(L, m).size() > 100) continue;
      std::vector<Rational> w;
      for (std::size_t a = 1; a <= m.size(); ++a) w.emplace_back(static_cast<long>(a));
      const auto ss = steady_state_mpf(Sector(L, m));
      Rational total = 0;
      for (const auto& [c, p] : ss.probs) total += eval(p, w);
      for (const auto& [c, q] : oracle::stationary(m.size(), L, m, w)) ASSERT_EQ(eval(ss.at(c), w) / total, q);
    }
  }
}

TEST(Mpf, FullTraceAgrees) {
  for (const auto& m : std::vector<std::vector<int>>{{1, 1}, {2, 1}, {1, 1, 1}, {1, 2, 1}}) {
    for (std::size_t L = 2; L <= 3; ++L) {
      const Sector s(L, m);
      EXPECT_EQ(steady_state_full_trace(s).probs, steady_state_mpf(s).probs) << s.to_string();
    }
  }
  EXPECT_THROW(steady_state_full_trace(Sector(2, {1, 1, 1, 1})), InputError);
}

TEST(Mpf, HeadroomAndThreadsGiveSameResult) {
  const Sector s(3, {1, 2, 1});
  const auto base = steady_state_mpf(s);
  MpfOptions opts;
  opts.headroom_check = true;
  opts.threads = 3;
  EXPECT_EQ(steady_state_mpf(s, opts).probs, base.probs);
}

TEST(Mpf, NumeratorIsDivisible) {
  const Sector s(3, {1, 1, 1});
  const auto lower = steady_state_mpf(s.prefix(2));
  const auto full = steady_state_mpf(s);
  for (const auto& c : enumerate_sector(s)) {
    EXPECT_EQ(exact_div_var(mpf_numerator(lower, c), 3), full.at(c));
  }
}

TEST(Mpf, MethodNames) {
  EXPECT_EQ(parse_method("full-trace"), Method::full_trace);
  EXPECT_EQ(to_string(Method::kernel), "kernel");
  EXPECT_THROW(parse_method("bogus"), InputError);
}
