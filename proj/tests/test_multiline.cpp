#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracle.hpp"
#include "tazrp/errors.hpp"
#include "tazrp/multiline.hpp"

using namespace tazrp;

namespace {

Polynomial P(const char* text, std::size_t n) { return parse_polynomial(text, n); }
Configuration C(const char* text, std::size_t n) { return parse_configuration(text, n); }

MultilineState y(std::vector<int> x4, std::vector<int> x3, std::vector<int> x2, std::vector<int> x1) {
  return MultilineState{{x1, x2, x3, x4}};
}

const MultilineState kY1 = y({1, 2, 0, 2}, {2, 1, 1, 0}, {1, 2, 0, 0}, {0, 1, 0, 0});
const MultilineState kY2 = y({1, 2, 0, 2}, {2, 1, 1, 0}, {0, 2, 0, 1}, {1, 0, 0, 0});
const MultilineState kY3 = y({1, 2, 0, 2}, {2, 1, 1, 0}, {0, 2, 0, 1}, {0, 1, 0, 0});
const MultilineState kY4 = y({1, 2, 0, 2}, {2, 1, 0, 1}, {1, 2, 0, 0}, {0, 1, 0, 0});

// Every order in which the particles of one color can be processed.
std::vector<std::vector<std::size_t>> orders(const Configuration& sigma, std::size_t b) {
  std::vector<std::size_t> sites;
  for (std::size_t i = 0; i < sigma.length(); ++i) sites.insert(sites.end(), sigma.site(i).count(b), i);
  std::vector<std::vector<std::size_t>> out;
  do out.push_back(sites);
  while (std::next_permutation(sites.begin(), sites.end()));
  return out;
}

}  // namespace

TEST(Multiline, RunningExample) {
  const auto sigma = C("e|13|2|3|e|12|11", 3);
  const std::vector<int> x4{0, 2, 1, 2, 0, 1, 3};
  const auto r = pair_and_project(4, sigma, x4);
  EXPECT_EQ(format_configuration(r.phi), "e|23|2|11|e|1|134");
  EXPECT_EQ(r.eta, (std::vector<std::size_t>{4, 3, 2, 1, 1, 4, 1}));
  EXPECT_EQ(r.weight, P("w1^3*w2*w3*w4", 4));
  std::size_t uncolored = 0;
  for (const auto& box : r.diagram.dot_colors) uncolored += static_cast<std::size_t>(std::count(box.begin(), box.end(), 0u));
  EXPECT_EQ(uncolored, 1u);
  EXPECT_EQ(r.diagram.hlines.size(), 8u);
}

TEST(Multiline, TwoSiteForcedPairing) {
  const auto sigma = C("1|e", 1);
  const std::vector<int> x2{1, 1};
  const auto r = pair_and_project(2, sigma, x2);
  EXPECT_EQ(format_configuration(r.phi), "2|1");
  EXPECT_EQ(r.weight, P("w2", 2));
  PairingPolicy high;
  high.highest_dot = true;
  const auto h = pair_and_project(2, sigma, x2, high);
  EXPECT_EQ(h.phi, r.phi);
  EXPECT_EQ(h.weight, r.weight);
}

TEST(Multiline, PairingErrors) {
  const auto sigma = C("1|1", 1);
  const std::vector<int> too_few{1, 1};
  EXPECT_THROW(pair_and_project(2, sigma, too_few), InputError);
  const std::vector<int> wrong_length{3};
  EXPECT_THROW(pair_and_project(2, sigma, wrong_length), DimensionError);
  const std::vector<int> ok{2, 1};
  EXPECT_THROW(pair_and_project(3, sigma, ok), DimensionError);
  PairingPolicy bad;
  bad.order = {{1, 1}};
  EXPECT_THROW(pair_and_project(2, sigma, ok, bad), InputError);
}

TEST(Multiline, ExampleTable) {
  struct Row {
    const MultilineState* x;
    const char* s1;
    const char* s2;
    const char* s3;
    const char* v2;
    const char* v3;
    const char* v4;
    const char* W;
  };
  const Row rows[] = {
      {&kY1, "e|1|e|e", "1|22|e|e", "22|3|1|e", "w2^3", "w1*w3^2", "w4^3", "w1*w2^3*w3^2*w4^3"},
      {&kY2, "1|e|e|e", "e|22|e|1", "22|3|1|e", "w2^3", "w3^3", "w4^3", "w2^3*w3^3*w4^3"},
      {&kY3, "e|1|e|e", "e|22|e|1", "22|3|1|e", "w1*w2^2", "w3^3", "w4^3", "w1*w2^2*w3^3*w4^3"},
      {&kY4, "e|1|e|e", "1|22|e|e", "22|3|e|1", "w2^3", "w3^3", "w1*w4^2", "w1*w2^3*w3^3*w4^2"},
  };
  for (const auto& r : rows) {
    const auto img = trace_levels(*r.x);
    ASSERT_EQ(img.sigmas.size(), 4u);
    EXPECT_EQ(format_configuration(img.sigmas[0]), r.s1);
    EXPECT_EQ(format_configuration(img.sigmas[1]), r.s2);
    EXPECT_EQ(format_configuration(img.sigmas[2]), r.s3);
    EXPECT_EQ(format_configuration(img.pi()), "3|14|e|22");
    EXPECT_EQ(img.varpis[0], P(r.v2, 4));
    EXPECT_EQ(img.varpis[1], P(r.v3, 4));
    EXPECT_EQ(img.varpis[2], P(r.v4, 4));
    EXPECT_EQ(weight_W(*r.x), P(r.W, 4));
    EXPECT_EQ(project_pi(*r.x), C("3|14|e|22", 4));
  }
}

TEST(Multiline, ExamplePreimagesAndProbability) {
  const auto sigma = C("3|14|e|22", 4);
  const auto pre = preimages(sigma);
  EXPECT_EQ(std::set<MultilineState>(pre.begin(), pre.end()), (std::set<MultilineState>{kY1, kY2, kY3, kY4}));
  EXPECT_EQ(pre.size(), 4u);
  const auto ss = steady_state_multiline(Sector(4, {1, 2, 1, 1}));
  EXPECT_EQ(ss.at(sigma), weight_W(kY1) + weight_W(kY2) + weight_W(kY3) + weight_W(kY4));
  EXPECT_EQ(ss.at(sigma), P("w2^2*w3^2*w4^2*(w1*w2*w4+w2*w3*w4+w1*w3*w4+w1*w2*w3)", 4));
}

TEST(Multiline, OneSpecies) {
  const MultilineState x{{{2, 0, 1}}};
  EXPECT_EQ(project_pi(x), level_one(x.row(1)));
  EXPECT_EQ(weight_W(x), Polynomial::constant(1, 1));
}

TEST(Multiline, SmallSectorValues) {
  const auto ss = steady_state_multiline(Sector(2, {1, 1}));
  EXPECT_EQ(ss.at(C("e|12", 2)), P("w1+w2", 2));
  EXPECT_EQ(ss.at(C("1|2", 2)), P("w2", 2));
}

TEST(Multiline, CensusPartitionsB) {
  for (const auto& m : std::vector<std::vector<int>>{{1, 1}, {2, 1}, {1, 2, 1}, {2, 2}}) {
    for (std::size_t L = 2; L <= 4; ++L) {
      const Sector s(L, m);
      std::map<Configuration, std::uint64_t> census;
      steady_state_multiline(s, &census);
      std::uint64_t total = 0;
      for (const auto& [c, k] : census) {
        EXPECT_GT(k, 0u);
        total += k;
      }
      EXPECT_EQ(census.size(), s.size());
      EXPECT_EQ(total, s.multiline_size());
    }
  }
}

TEST(Multiline, AgreesWithMpfOnGrid) {
  for (const auto& m : std::vector<std::vector<int>>{{1, 1}, {1, 2}, {2, 1}, {2, 2}, {1, 1, 1}, {2, 1, 1}, {1, 2, 1},
                                                     {1, 1, 2}, {2, 2, 1}, {2, 1, 2}, {1, 2, 2}, {2, 2, 2}}) {
    for (std::size_t L = 2; L <= 4; ++L) {
      const Sector s(L, m);
      if (s.multiline_size() > 400000) continue;
      EXPECT_EQ(steady_state_multiline(s).probs, steady_state_mpf(s).probs) << s.to_string();
    }
  }
}

TEST(Multiline, DiagramInvariantsProperty) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t L = 2 + rng() % 4;
    const std::size_t a = 2 + rng() % 3;
    std::vector<int> m(a);
    for (auto& v : m) v = 1 + static_cast<int>(rng() % 2);
    const Sector lower(L, std::vector<int>(m.begin(), m.end() - 1));
    const auto configs = enumerate_sector(lower);
    const auto& sigma = configs[rng() % configs.size()];
    int ell = 0;
    for (int v : m) ell += v;
    std::vector<int> xa(L, 0);
    for (int d = 0; d < ell; ++d) ++xa[rng() % L];
    const auto r = pair_and_project(a, sigma, xa);
    EXPECT_EQ(r.phi.totals(), m);
    EXPECT_EQ(r.phi.truncated(a - 1).totals(), sigma.totals());
    for (std::size_t i = 0; i < L; ++i) EXPECT_EQ(r.phi.site(i).total(), xa[i]);
    ASSERT_EQ(r.weight.term_count(), 1u);
    EXPECT_EQ(homogeneous_degree(r.weight), L - 1);
    for (const auto& line : r.diagram.hlines) EXPECT_LE(line.borders.size(), L - 1);
  }
}

TEST(Multiline, PairingOrderIndependenceProperty) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t L = 2 + rng() % 3;
    const std::size_t a = 2 + rng() % 2;
    std::vector<int> m(a);
    for (auto& v : m) v = 1 + static_cast<int>(rng() % 2);
    const Sector lower(L, std::vector<int>(m.begin(), m.end() - 1));
    const auto configs = enumerate_sector(lower);
    const auto& sigma = configs[rng() % configs.size()];
    int ell = 0;
    for (int v : m) ell += v;
    std::vector<int> xa(L, 0);
    for (int d = 0; d < ell; ++d) ++xa[rng() % L];
    const auto base = pair_and_project(a, sigma, xa);
    std::vector<std::vector<std::vector<std::size_t>>> per_color;
    for (std::size_t b = 1; b < a; ++b) per_color.push_back(orders(sigma, b));
    std::vector<std::size_t> pick(per_color.size(), 0);
    while (true) {
      for (bool high : {false, true}) {
        PairingPolicy pol;
        pol.highest_dot = high;
        for (std::size_t b = 0; b < per_color.size(); ++b) pol.order.push_back(per_color[b][pick[b]]);
        const auto r = pair_and_project(a, sigma, xa, pol);
        ASSERT_EQ(r.phi, base.phi);
        ASSERT_EQ(r.weight, base.weight);
      }
      std::size_t b = 0;
      while (b < pick.size() && ++pick[b] == per_color[b].size()) pick[b++] = 0;
      if (b == pick.size()) break;
    }
  }
}
