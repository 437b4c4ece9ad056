#pragma once

// Continuous-time Monte Carlo for the n-species chain at numeric rates.
//
// Random numbers come from std::mt19937_64. Replica r of a run with seed s
// is seeded through std::seed_seq{s_lo, s_hi, r_lo, r_hi}. Uniform variates use the
// top 53 bits of one draw; holding times are -log(1 - U) / R.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "tazrp/polyring.hpp"
#include "tazrp/states.hpp"

namespace tazrp {

struct SimConfig {
  Sector sector;
  std::vector<double> w;
  std::uint64_t seed = 0;
  /// Total number of events, burn-in included.
  std::uint64_t events = 0;
  std::uint64_t burn_in = 0;
  /// Starting configuration; defaults to the first one in canonical order.
  std::optional<Configuration> start;
};

/// Throws InputError unless every w_a > 0, events > burn_in and the start
/// configuration (if any) lies in the sector.
void validate(const SimConfig& cfg);

struct EmpiricalDistribution {
  std::map<Configuration, double> weights;
  double total_time = 0.0;
  std::uint64_t events = 0;

  /// weights normalized by total_time.
  std::map<Configuration, double> fractions() const;
  void merge(const EmpiricalDistribution& other);
  friend bool operator==(const EmpiricalDistribution&, const EmpiricalDistribution&) = default;
};

struct SimEvent {
  std::size_t site;
  std::size_t k;
  std::size_t rate_species;
  double rate;
};

/// Every (site, k) event of `state` with its rate at w. Events reaching the
/// same target stay separate.
std::vector<SimEvent> events_of(const Configuration& state, std::span<const double> w);

struct StepResult {
  Configuration next;
  double holding_time;
};

StepResult step(const Configuration& state, std::span<const double> w, std::mt19937_64& rng);

EmpiricalDistribution run(const SimConfig& cfg);

/// Independent replicas (stream r = 0..replicas-1) merged in replica order.
EmpiricalDistribution run_replicas(const SimConfig& cfg, unsigned replicas, unsigned threads = 1);

/// Half the L1 distance; configurations missing from either side count as 0.
double tv_distance(const std::map<Configuration, double>& p, const std::map<Configuration, double>& q);
double tv_distance(const std::map<Configuration, double>& p, const std::map<Configuration, Rational>& q);

}  // namespace tazrp
