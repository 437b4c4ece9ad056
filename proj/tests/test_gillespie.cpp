#include <gtest/gtest.h>

#include <algorithm>

#include "oracle.hpp"
#include "tazrp/errors.hpp"
#include "tazrp/gillespie.hpp"
#include "tazrp/markov.hpp"

using namespace tazrp;

namespace {

SimConfig config(std::size_t L, std::vector<int> m, std::vector<double> w, std::uint64_t events,
                 std::uint64_t burn_in = 1000, std::uint64_t seed = 42) {
  SimConfig cfg;
  cfg.sector = Sector(L, std::move(m));
  cfg.w = std::move(w);
  cfg.seed = seed;
  cfg.events = events;
  cfg.burn_in = burn_in;
  return cfg;
}

}  // namespace

TEST(Gillespie, OneSpeciesEvents) {
  const auto c = parse_configuration("11|e|e", 1);
  const std::vector<double> w{1.0};
  const auto evs = events_of(c, w);
  ASSERT_EQ(evs.size(), 2u);
  double total = 0.0;
  for (const auto& e : evs) {
    EXPECT_DOUBLE_EQ(e.rate, 1.0);
    total += e.rate;
  }
  EXPECT_DOUBLE_EQ(total, 2.0);
}

TEST(Gillespie, ReferenceRateTable) {
  const auto c = parse_configuration("e|2335", 5);
  const std::vector<double> w{1.0, 2.0, 3.0, 5.0, 7.0};
  std::vector<double> rates;
  for (const auto& e : events_of(c, w)) {
    EXPECT_EQ(e.site, 0u);
    rates.push_back(e.rate);
  }
  std::sort(rates.begin(), rates.end());
  EXPECT_EQ(rates, (std::vector<double>{2.0, 3.0, 3.0, 7.0}));
}

TEST(Gillespie, StepConservesAndMatchesExitRate) {
  const Sector s(4, {2, 1, 1});
  const std::vector<double> w{0.5, 1.5, 4.0};
  std::mt19937_64 rng(9);
  auto state = enumerate_sector(s).front();
  for (int i = 0; i < 2000; ++i) {
    double total = 0.0;
    for (const auto& e : events_of(state, w)) total += e.rate;
    double g = 0.0;
    for (std::size_t k = 0; k < state.length(); ++k) g += exit_rate(state.site(k), w);
    EXPECT_NEAR(total, g, 1e-12);
    auto r = step(state, w, rng);
    EXPECT_GT(r.holding_time, 0.0);
    EXPECT_TRUE(s.contains(r.next));
    state = r.next;
  }
}

TEST(Gillespie, DeterministicForSeed) {
  const auto cfg = config(3, {1, 1}, {1.0, 2.0}, 20000);
  const auto a = run(cfg);
  const auto b = run(cfg);
  EXPECT_EQ(a, b);
  auto other = cfg;
  other.seed = 43;
  EXPECT_NE(run(other), a);
}

TEST(Gillespie, WeightsSumToTotalTime) {
  const auto d = run(config(3, {1, 2}, {1.0, 3.0}, 20000));
  double sum = 0.0;
  for (const auto& [c, t] : d.weights) sum += t;
  EXPECT_NEAR(sum, d.total_time, 1e-9 * d.total_time);
  EXPECT_EQ(d.events, 19000u);
}

TEST(Gillespie, ReplicasIndependentOfThreads) {
  const auto cfg = config(3, {1, 1}, {1.0, 2.0}, 5000);
  const auto a = run_replicas(cfg, 4, 1);
  const auto b = run_replicas(cfg, 4, 3);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.events, 4u * 4000u);
  EXPECT_EQ(run_replicas(cfg, 1, 1), run(cfg));
}

TEST(Gillespie, ValidationErrors) {
  EXPECT_THROW(run(config(3, {1, 1}, {1.0, 0.0}, 100)), InputError);
  EXPECT_THROW(run(config(3, {1, 1}, {1.0}, 100)), InputError);
  EXPECT_THROW(run(config(3, {1, 1}, {1.0, 1.0}, 100, 100)), InputError);
  auto cfg = config(3, {1, 1}, {1.0, 1.0}, 100, 10);
  cfg.start = parse_configuration("e|1|1", 2);
  EXPECT_THROW(run(cfg), InputError);
  EXPECT_THROW(run_replicas(config(3, {1, 1}, {1.0, 1.0}, 100, 10), 0), InputError);
}

TEST(Gillespie, TvDistance) {
  const auto a = parse_configuration("e|1", 1), b = parse_configuration("1|e", 1);
  const std::map<Configuration, double> p{{a, 0.25}, {b, 0.75}};
  const std::map<Configuration, double> q{{a, 0.5}};
  EXPECT_DOUBLE_EQ(tv_distance(p, q), 0.5);
  const std::map<Configuration, Rational> r{{a, Rational(1, 4)}, {b, Rational(3, 4)}};
  EXPECT_DOUBLE_EQ(tv_distance(p, r), 0.0);
}

TEST(Gillespie, ConvergesToExactLaw) {
  const auto d = run(config(3, {1, 1}, {1.0, 2.0}, 310000, 10000));
  const std::vector<Rational> w{1, 2};
  EXPECT_LT(tv_distance(d.fractions(), oracle::stationary(2, 3, {1, 1}, w)), 0.02);
}
