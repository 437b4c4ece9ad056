#include <benchmark/benchmark.h>

#include <random>

#include "tazrp/fock.hpp"
#include "tazrp/gillespie.hpp"
#include "tazrp/markov.hpp"
#include "tazrp/mpf.hpp"
#include "tazrp/multiline.hpp"

using namespace tazrp;

namespace {

Sector sector_for(std::int64_t code) {
  switch (code) {
    case 0: return Sector(3, {1, 1});
    case 1: return Sector(4, {2, 2});
    case 2: return Sector(3, {1, 1, 1});
    default: return Sector(3, {2, 1, 1});
  }
}

void BM_PolyMultiply(benchmark::State& st) {
  const Polynomial a = parse_polynomial("(w1+w2+w3)^4*(w1+2*w2)", 3);
  const Polynomial b = parse_polynomial("(w1*w2+w3^2+w1)^3", 3);
  for (auto _ : st) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_PolyMultiply);

void BM_BuildGenerator(benchmark::State& st) {
  const Sector s = sector_for(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(build_generator(s));
  st.SetLabel(s.to_string());
}
BENCHMARK(BM_BuildGenerator)->DenseRange(0, 3);

void BM_SteadyMpf(benchmark::State& st) {
  const Sector s = sector_for(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(steady_state_mpf(s));
  st.SetLabel(s.to_string());
}
BENCHMARK(BM_SteadyMpf)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_SteadyMultiline(benchmark::State& st) {
  const Sector s = sector_for(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(steady_state_multiline(s));
  st.SetLabel(s.to_string());
}
BENCHMARK(BM_SteadyMultiline)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_ReducedTrace(benchmark::State& st) {
  const Configuration mu = parse_configuration("1|2|12", 2);
  const Configuration sigma = parse_configuration("1|3|123", 3);
  for (auto _ : st) benchmark::DoNotOptimize(reduced_trace(mu, sigma));
}
BENCHMARK(BM_ReducedTrace);

void BM_HatRelation(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(check_hat_relation(n, 1));
}
BENCHMARK(BM_HatRelation)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_GillespieStep(benchmark::State& st) {
  const Configuration c = parse_configuration("12|2|1|e|112", 2);
  const std::vector<double> w{1.0, 2.5};
  std::mt19937_64 rng(7);
  Configuration cur = c;
  for (auto _ : st) {
    auto r = step(cur, w, rng);
    cur = std::move(r.next);
  }
}
BENCHMARK(BM_GillespieStep);

}  // namespace
BENCHMARK_MAIN();
