#include "tazrp/mpf.hpp"

#include <thread>

#include "tazrp/errors.hpp"

namespace tazrp {

std::string to_string(Method m) {
  switch (m) {
    case Method::mpf:
      return "mpf";
    case Method::multiline:
      return "multiline";
    case Method::kernel:
      return "kernel";
    case Method::full_trace:
      return "full-trace";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  if (name == "mpf") return Method::mpf;
  if (name == "multiline") return Method::multiline;
  if (name == "kernel") return Method::kernel;
  if (name == "full-trace") return Method::full_trace;
  throw InputError("unknown method '" + std::string(name) + "'");
}

const Polynomial& SteadyState::at(const Configuration& c) const {
  auto it = probs.find(c);
  if (it == probs.end()) throw InputError("configuration " + format_configuration(c) + " is not in " + sector.to_string());
  return it->second;
}

namespace {

std::vector<int> lower_caps(const std::vector<int>& m, int extra) {
  std::vector<int> caps(m.begin(), m.end() - 1);
  for (int& c : caps) c += extra;
  return caps;
}

// Compiled A^{(n)}_{mu,sigma} for every pair of local states that can occur
// in the sector.
class OperatorTable {
 public:
  OperatorTable(const Sector& s, int extra) : n_(s.species_count()), space_(lower_caps(s.multiplicities(), extra)) {
    const auto& m = s.multiplicities();
    mus_ = enumerate_local_states(std::span<const int>(m.data(), m.size() - 1));
    sigmas_ = enumerate_local_states(m);
    for (std::size_t i = 0; i < mus_.size(); ++i) mu_id_.emplace(mus_[i], i);
    for (std::size_t i = 0; i < sigmas_.size(); ++i) sigma_id_.emplace(sigmas_[i], i);
    table_.reserve(mus_.size() * sigmas_.size());
    for (const auto& mu : mus_) {
      for (const auto& sigma : sigmas_) table_.push_back(compile_A(n_, mu, sigma, space_));
    }
  }

  std::vector<std::size_t> mu_ids(const Configuration& c) const { return ids(c, mu_id_); }
  std::vector<std::size_t> sigma_ids(const Configuration& c) const { return ids(c, sigma_id_); }

  Polynomial trace(const std::vector<std::size_t>& mu, const std::vector<std::size_t>& sigma) const {
    std::vector<const CompiledA*> ops(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) ops[i] = &table_[mu[i] * sigmas_.size() + sigma[i]];
    return trace_compiled(ops, n_);
  }

 private:
  static std::vector<std::size_t> ids(const Configuration& c, const std::map<LocalState, std::size_t>& lookup) {
    std::vector<std::size_t> out(c.length());
    for (std::size_t i = 0; i < c.length(); ++i) {
      auto it = lookup.find(c.site(i));
      if (it == lookup.end()) throw InputError("local state outside the sector bounds");
      out[i] = it->second;
    }
    return out;
  }

  std::size_t n_;
  TruncatedSpace space_;
  std::vector<LocalState> mus_, sigmas_;
  std::map<LocalState, std::size_t> mu_id_, sigma_id_;
  std::vector<CompiledA> table_;
};

struct Level {
  const OperatorTable& table;
  const OperatorTable* wide;
  std::vector<std::vector<std::size_t>> mu_ids;
  std::vector<Polynomial> weights;

  Polynomial numerator(const Configuration& sigma, std::size_t n) const {
    const auto sig = table.sigma_ids(sigma);
    Polynomial acc(n);
    for (std::size_t j = 0; j < mu_ids.size(); ++j) {
      Polynomial t = table.trace(mu_ids[j], sig);
      if (wide && wide->trace(mu_ids[j], sig) != t) {
        throw InternalError("trace changed when Fock caps were raised, at " + format_configuration(sigma));
      }
      if (!t.is_zero()) acc.add_product(weights[j], t);
    }
    return acc;
  }
};

Level make_level(const SteadyState& lower, const OperatorTable& table, const OperatorTable* wide, std::size_t n) {
  Level level{table, wide, {}, {}};
  level.mu_ids.reserve(lower.probs.size());
  level.weights.reserve(lower.probs.size());
  for (const auto& [mu, p] : lower.probs) {
    level.mu_ids.push_back(table.mu_ids(mu));
    level.weights.push_back(p.extended(n));
  }
  return level;
}

Polynomial divide_top(const Polynomial& p, std::size_t n, const Configuration& sigma) {
  try {
    return exact_div_var(p, n);
  } catch (const NotDivisible&) {
    throw InternalError("matrix product numerator not divisible by w" + std::to_string(n) + " at " +
                        format_configuration(sigma));
  }
}

SteadyState uniform(const Sector& s, Method method) {
  SteadyState ss{s, {}, method};
  for (auto& c : enumerate_sector(s)) ss.probs.emplace(std::move(c), Polynomial::constant(1, 1));
  return ss;
}

}  // namespace

SteadyState steady_state_mpf(const Sector& s, const MpfOptions& opts) {
  const std::size_t n = s.species_count();
  if (n == 1) return uniform(s, Method::mpf);
  const SteadyState lower = steady_state_mpf(s.prefix(n - 1), opts);
  const OperatorTable table(s, 0);
  std::optional<OperatorTable> wide;
  if (opts.headroom_check) wide.emplace(s, 1);
  const Level level = make_level(lower, table, wide ? &*wide : nullptr, n);

  const auto configs = enumerate_sector(s);
  std::vector<Polynomial> values(configs.size());
  const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(configs.size())));
  auto work = [&](unsigned tid) {
    for (std::size_t i = tid; i < configs.size(); i += threads) {
      values[i] = divide_top(level.numerator(configs[i], n), n, configs[i]);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          work(t);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  SteadyState ss{s, {}, Method::mpf};
  for (std::size_t i = 0; i < configs.size(); ++i) ss.probs.emplace(configs[i], std::move(values[i]));
  return ss;
}

Polynomial mpf_numerator(const SteadyState& lower, const Configuration& sigma) {
  const std::size_t n = sigma.species_count();
  if (n < 2) throw InputError("mpf_numerator needs n >= 2");
  const Sector s(sigma.length(), sigma.totals());
  if (lower.sector != s.prefix(n - 1)) throw InputError("lower steady state is for a different sector");
  const OperatorTable table(s, 0);
  return make_level(lower, table, nullptr, n).numerator(sigma, n);
}

Polynomial reduced_trace(const Configuration& mu, const Configuration& sigma) {
  const std::size_t n = sigma.species_count();
  if (n < 2) throw InputError("reduced_trace needs n >= 2");
  if (mu.species_count() + 1 != n || mu.length() != sigma.length()) {
    throw DimensionError("mu must be an (n-1)-species configuration of the same length");
  }
  const TruncatedSpace space(lower_caps(sigma.totals(), 0));
  std::vector<CompiledA> ops;
  for (std::size_t i = 0; i < sigma.length(); ++i) ops.push_back(compile_A(n, mu.site(i), sigma.site(i), space));
  std::vector<const CompiledA*> ptrs;
  for (const auto& op : ops) ptrs.push_back(&op);
  return exact_div_var(trace_compiled(ptrs, n), n);
}

SteadyState steady_state_full_trace(const Sector& s) {
  const std::size_t n = s.species_count();
  if (n > 3) throw InputError("the full-trace evaluation is limited to n <= 3");
  if (n == 1) return uniform(s, Method::full_trace);
  const int m1 = s.m(1);

  // X^{(2)}_alpha = sum_{mu <= m1} A^{(2)}_{mu,alpha} on one mode of cap m1.
  const TruncatedSpace one_mode({m1});
  auto x2 = [&](const LocalState& alpha) {
    FockOperator x(one_mode, 2);
    for (int mu = 0; mu <= m1; ++mu) x = x + build_A(2, LocalState{mu}, alpha, false, one_mode);
    return x.extended(n);
  };

  std::map<LocalState, FockOperator> xs;
  for (const auto& sigma : enumerate_local_states(s.multiplicities())) {
    if (n == 2) {
      xs.emplace(sigma, x2(sigma));
      continue;
    }
    const TruncatedSpace two_modes({s.m(1), s.m(2)});
    FockOperator x;
    bool first = true;
    for (const auto& mu : enumerate_local_states(std::vector<int>{s.m(1), s.m(2)})) {
      FockOperator term = FockOperator::tensor(x2(mu), build_A(3, mu, sigma, false, two_modes));
      x = first ? term : x + term;
      first = false;
    }
    xs.emplace(sigma, std::move(x));
  }

  SteadyState ss{s, {}, Method::full_trace};
  for (auto& c : enumerate_sector(s)) {
    std::vector<FockOperator> ops;
    for (std::size_t i = 0; i < c.length(); ++i) ops.push_back(xs.at(c.site(i)));
    Polynomial p = trace_product(ops);
    for (std::size_t a = 2; a <= n; ++a) p = divide_top(p, a, c);
    ss.probs.emplace(std::move(c), std::move(p));
  }
  return ss;
}

NormalizationReport normalization_check(const SteadyState& ss) {
  NormalizationReport r;
  const std::vector<Rational> ones(ss.sector.species_count(), Rational(1));
  Rational total = 0;
  for (const auto& [c, p] : ss.probs) {
    if (p.ambient() != ones.size()) {
      total += eval(p, std::vector<Rational>(p.ambient(), Rational(1)));
    } else {
      total += eval(p, ones);
    }
  }
  r.total = boost::multiprecision::numerator(total);
  r.expected = Integer(ss.sector.multiline_size());
  r.ok = boost::multiprecision::denominator(total) == 1 && r.total == r.expected && ss.probs.size() == ss.sector.size();
  return r;
}

}  // namespace tazrp
