#include "tazrp/gillespie.hpp"

#include <cmath>
#include <thread>

#include "tazrp/errors.hpp"
#include "tazrp/markov.hpp"

namespace tazrp {

namespace {

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t replica) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(replica), static_cast<std::uint32_t>(replica >> 32)};
  return std::mt19937_64(seq);
}

Configuration first_configuration(const Sector& s) {
  Configuration c(s.species_count(), s.length());
  for (std::size_t a = 1; a <= s.species_count(); ++a) c.site(s.length() - 1).count(a) = s.m(a);
  return c;
}

EmpiricalDistribution run_stream(const SimConfig& cfg, std::uint64_t replica) {
  auto rng = stream(cfg.seed, replica);
  Configuration state = cfg.start ? *cfg.start : first_configuration(cfg.sector);
  EmpiricalDistribution dist;
  for (std::uint64_t e = 0; e < cfg.events; ++e) {
    auto r = step(state, cfg.w, rng);
    if (e >= cfg.burn_in) {
      dist.weights[state] += r.holding_time;
      dist.total_time += r.holding_time;
      ++dist.events;
    }
    state = std::move(r.next);
  }
  return dist;
}

}  // namespace

void validate(const SimConfig& cfg) {
  if (cfg.w.size() != cfg.sector.species_count()) throw InputError("rate vector length differs from n");
  for (double wa : cfg.w) {
    if (!(wa > 0.0) || !std::isfinite(wa)) throw InputError("rates must be positive and finite");
  }
  if (cfg.events <= cfg.burn_in) throw InputError("events must exceed burn-in");
  if (cfg.start && !cfg.sector.contains(*cfg.start)) throw InputError("start configuration is outside the sector");
}

std::map<Configuration, double> EmpiricalDistribution::fractions() const {
  std::map<Configuration, double> out;
  for (const auto& [c, t] : weights) out.emplace(c, total_time > 0 ? t / total_time : 0.0);
  return out;
}

void EmpiricalDistribution::merge(const EmpiricalDistribution& other) {
  for (const auto& [c, t] : other.weights) weights[c] += t;
  total_time += other.total_time;
  events += other.events;
}

std::vector<SimEvent> events_of(const Configuration& state, std::span<const double> w) {
  if (w.size() != state.species_count()) throw DimensionError("rate vector length differs from n");
  std::vector<SimEvent> out;
  for (const auto& t : transitions(state)) out.push_back({t.site, t.k, t.rate_species, w[t.rate_species - 1]});
  return out;
}

StepResult step(const Configuration& state, std::span<const double> w, std::mt19937_64& rng) {
  const auto evs = events_of(state, w);
  double total = 0.0;
  for (const auto& e : evs) total += e.rate;
  if (!(total > 0.0)) throw InternalError("configuration has no outgoing events");
  const double hold = -std::log1p(-uniform01(rng)) / total;
  const double target = uniform01(rng) * total;
  std::size_t pick = evs.size() - 1;
  double acc = 0.0;
  for (std::size_t i = 0; i < evs.size(); ++i) {
    acc += evs[i].rate;
    if (target < acc) {
      pick = i;
      break;
    }
  }
  const auto& e = evs[pick];
  const std::size_t j = (e.site + 1) % state.length();
  const auto local = local_transitions(state.site(e.site), state.site(j));
  Configuration next = state;
  next.site(e.site) = local[e.k - 1].gamma;
  next.site(j) = local[e.k - 1].delta;
  return {std::move(next), hold};
}

EmpiricalDistribution run(const SimConfig& cfg) {
  validate(cfg);
  return run_stream(cfg, 0);
}

EmpiricalDistribution run_replicas(const SimConfig& cfg, unsigned replicas, unsigned threads) {
  validate(cfg);
  if (replicas == 0) throw InputError("need at least one replica");
  std::vector<EmpiricalDistribution> parts(replicas);
  threads = std::max(1u, std::min(threads, replicas));
  if (threads == 1) {
    for (unsigned r = 0; r < replicas; ++r) parts[r] = run_stream(cfg, r);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (unsigned r = t; r < replicas; r += threads) parts[r] = run_stream(cfg, r);
      });
    }
    for (auto& th : pool) th.join();
  }
  EmpiricalDistribution merged;
  for (const auto& p : parts) merged.merge(p);
  return merged;
}

double tv_distance(const std::map<Configuration, double>& p, const std::map<Configuration, double>& q) {
  double sum = 0.0;
  for (const auto& [c, v] : p) {
    auto it = q.find(c);
    sum += std::abs(v - (it == q.end() ? 0.0 : it->second));
  }
  for (const auto& [c, v] : q) {
    if (!p.count(c)) sum += std::abs(v);
  }
  return 0.5 * sum;
}

double tv_distance(const std::map<Configuration, double>& p, const std::map<Configuration, Rational>& q) {
  std::map<Configuration, double> qd;
  for (const auto& [c, v] : q) qd.emplace(c, v.convert_to<double>());
  return tv_distance(p, qd);
}

}  // namespace tazrp
