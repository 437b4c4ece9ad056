#include "tazrp/fock.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <thread>

#include "tazrp/errors.hpp"
#include "tazrp/markov.hpp"

namespace tazrp {

TruncatedSpace::TruncatedSpace(std::vector<int> caps) : caps_(std::move(caps)), stride_(caps_.size()) {
  dim_ = 1;
  for (std::size_t b = caps_.size(); b-- > 0;) {
    if (caps_[b] < 0) throw InputError("negative Fock cap");
    stride_[b] = dim_;
    dim_ *= static_cast<std::size_t>(caps_[b]) + 1;
  }
}

std::optional<std::size_t> TruncatedSpace::index(std::span<const int> occ) const {
  if (occ.size() != caps_.size()) throw DimensionError("occupation vector has the wrong number of modes");
  std::size_t idx = 0;
  for (std::size_t b = 0; b < occ.size(); ++b) {
    if (occ[b] < 0 || occ[b] > caps_[b]) return std::nullopt;
    idx += stride_[b] * static_cast<std::size_t>(occ[b]);
  }
  return idx;
}

std::vector<int> TruncatedSpace::occupation(std::size_t idx) const {
  std::vector<int> occ(caps_.size());
  for (std::size_t b = 0; b < caps_.size(); ++b) {
    occ[b] = static_cast<int>(idx / stride_[b]);
    idx %= stride_[b];
  }
  return occ;
}

TruncatedSpace TruncatedSpace::widened(int extra) const {
  std::vector<int> caps = caps_;
  for (int& c : caps) c += extra;
  return TruncatedSpace(std::move(caps));
}

FockOperator::FockOperator(TruncatedSpace space, std::size_t nvars)
    : space_(std::move(space)), nvars_(nvars), cols_(space_.dim()) {}

void FockOperator::add_entry(std::size_t out, std::size_t in, const Polynomial& value) {
  if (value.is_zero()) return;
  auto& col = cols_.at(in);
  auto it = std::lower_bound(col.begin(), col.end(), out, [](const Entry& e, std::size_t o) { return e.out < o; });
  if (it != col.end() && it->out == out) {
    it->value += value;
    if (it->value.is_zero()) col.erase(it);
  } else {
    col.insert(it, Entry{out, value});
  }
}

namespace {

template <class Fn>
FockOperator single_mode(const TruncatedSpace& space, std::size_t mode, std::size_t nvars, Fn image) {
  if (mode >= space.modes()) throw DimensionError("mode index out of range");
  FockOperator op(space, nvars);
  const Polynomial one = Polynomial::constant(nvars, 1);
  for (std::size_t s = 0; s < space.dim(); ++s) {
    auto occ = space.occupation(s);
    if (!image(occ[mode])) continue;
    if (auto out = space.index(occ)) op.add_entry(*out, s, one);
  }
  return op;
}

}  // namespace

FockOperator FockOperator::identity(const TruncatedSpace& space, std::size_t nvars) {
  FockOperator op(space, nvars);
  const Polynomial one = Polynomial::constant(nvars, 1);
  for (std::size_t s = 0; s < space.dim(); ++s) op.add_entry(s, s, one);
  return op;
}

FockOperator FockOperator::raising(const TruncatedSpace& space, std::size_t mode, std::size_t nvars) {
  return single_mode(space, mode, nvars, [](int& m) { return ++m, true; });
}

FockOperator FockOperator::lowering(const TruncatedSpace& space, std::size_t mode, std::size_t nvars) {
  return single_mode(space, mode, nvars, [](int& m) { return --m, true; });
}

FockOperator FockOperator::vacuum(const TruncatedSpace& space, std::size_t mode, std::size_t nvars) {
  return single_mode(space, mode, nvars, [](int& m) { return m == 0; });
}

FockOperator FockOperator::nonvacuum(const TruncatedSpace& space, std::size_t mode, std::size_t nvars) {
  return single_mode(space, mode, nvars, [](int& m) { return m != 0; });
}

Polynomial FockOperator::element(std::size_t out, std::size_t in) const {
  for (const auto& e : cols_.at(in)) {
    if (e.out == out) return e.value;
  }
  return Polynomial(nvars_);
}

std::size_t FockOperator::nonzeros() const {
  std::size_t nnz = 0;
  for (const auto& c : cols_) nnz += c.size();
  return nnz;
}

std::vector<std::pair<std::size_t, Polynomial>> FockOperator::apply(
    std::span<const std::pair<std::size_t, Polynomial>> v) const {
  std::map<std::size_t, Polynomial> acc;
  for (const auto& [in, coeff] : v) {
    for (const auto& e : cols_.at(in)) {
      auto [it, inserted] = acc.try_emplace(e.out, nvars_);
      it->second.add_product(e.value, coeff);
    }
  }
  std::vector<std::pair<std::size_t, Polynomial>> out;
  for (auto& [idx, p] : acc) {
    if (!p.is_zero()) out.emplace_back(idx, std::move(p));
  }
  return out;
}

namespace {

void require_compatible(const FockOperator& x, const FockOperator& y) {
  if (x.space() != y.space()) throw DimensionError("Fock operators live on different spaces");
  if (x.nvars() != y.nvars()) throw DimensionError("Fock operators have different coefficient rings");
}

}  // namespace

FockOperator operator*(const FockOperator& x, const FockOperator& y) {
  require_compatible(x, y);
  FockOperator out(x.space_, x.nvars_);
  for (std::size_t in = 0; in < y.cols_.size(); ++in) {
    std::vector<std::pair<std::size_t, Polynomial>> v;
    for (const auto& e : y.cols_[in]) v.emplace_back(e.out, e.value);
    for (auto& [o, p] : x.apply(v)) out.cols_[in].push_back({o, std::move(p)});
  }
  return out;
}

FockOperator operator+(const FockOperator& x, const FockOperator& y) {
  require_compatible(x, y);
  FockOperator out = x;
  for (std::size_t in = 0; in < y.cols_.size(); ++in) {
    for (const auto& e : y.cols_[in]) out.add_entry(e.out, in, e.value);
  }
  return out;
}

FockOperator operator-(const FockOperator& x, const FockOperator& y) {
  return x + Polynomial::constant(y.nvars(), -1) * y;
}

FockOperator operator*(const Polynomial& c, const FockOperator& x) {
  if (c.ambient() != x.nvars_) throw DimensionError("scalar has a different coefficient ring");
  FockOperator out(x.space_, x.nvars_);
  for (std::size_t in = 0; in < x.cols_.size(); ++in) {
    for (const auto& e : x.cols_[in]) out.add_entry(e.out, in, c * e.value);
  }
  return out;
}

bool operator==(const FockOperator& x, const FockOperator& y) {
  if (x.space_ != y.space_ || x.nvars_ != y.nvars_) return false;
  for (std::size_t in = 0; in < x.cols_.size(); ++in) {
    const auto& a = x.cols_[in];
    const auto& b = y.cols_[in];
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].out != b[i].out || a[i].value != b[i].value) return false;
    }
  }
  return true;
}

FockOperator FockOperator::tensor(const FockOperator& x, const FockOperator& y) {
  if (x.nvars_ != y.nvars_) throw DimensionError("Fock operators have different coefficient rings");
  std::vector<int> caps = x.space_.caps();
  caps.insert(caps.end(), y.space_.caps().begin(), y.space_.caps().end());
  FockOperator out(TruncatedSpace(std::move(caps)), x.nvars_);
  const std::size_t ny = y.space_.dim();
  for (std::size_t ix = 0; ix < x.cols_.size(); ++ix) {
    for (std::size_t iy = 0; iy < ny; ++iy) {
      for (const auto& ex : x.cols_[ix]) {
        for (const auto& ey : y.cols_[iy]) out.add_entry(ex.out * ny + ey.out, ix * ny + iy, ex.value * ey.value);
      }
    }
  }
  return out;
}

Polynomial FockOperator::trace() const {
  Polynomial t(nvars_);
  for (std::size_t s = 0; s < cols_.size(); ++s) t += element(s, s);
  return t;
}

FockOperator FockOperator::extended(std::size_t nvars) const {
  FockOperator out(space_, nvars);
  for (std::size_t in = 0; in < cols_.size(); ++in) {
    for (const auto& e : cols_[in]) out.cols_[in].push_back({e.out, e.value.extended(nvars)});
  }
  return out;
}

Polynomial trace_product(std::span<const FockOperator> ops) {
  if (ops.empty()) throw InputError("trace of an empty operator product");
  for (const auto& op : ops) require_compatible(op, ops.front());
  const auto& space = ops.front().space();
  const std::size_t nvars = ops.front().nvars();
  Polynomial total(nvars);
  for (std::size_t s = 0; s < space.dim(); ++s) {
    std::vector<std::pair<std::size_t, Polynomial>> v{{s, Polynomial::constant(nvars, 1)}};
    for (std::size_t i = ops.size(); i-- > 0 && !v.empty();) v = ops[i].apply(v);
    for (const auto& [idx, p] : v) {
      if (idx == s) total += p;
    }
  }
  return total;
}

std::optional<AStep> apply_A(std::size_t n, const LocalState& mu, const LocalState& alpha, std::span<const int> occ) {
  if (n < 2) throw InputError("A operators need n >= 2");
  if (alpha.species_count() != n || mu.species_count() != n - 1 || occ.size() != n - 1) {
    throw DimensionError("A operator arguments do not match n");
  }
  AStep step{std::vector<int>(occ.begin(), occ.end()), n};
  for (std::size_t b = 0; b + 1 < n; ++b) {
    step.out[b] -= alpha[b];
    if (step.out[b] < 0) return std::nullopt;
  }
  for (std::size_t b = 0; b + 1 < n; ++b) {
    if (step.out[b] != 0) {
      step.species = b + 1;
      break;
    }
  }
  for (std::size_t a = step.species + 1; a <= n; ++a) {
    if (alpha.count(a) != 0) return std::nullopt;
  }
  for (std::size_t b = 0; b + 1 < n; ++b) step.out[b] += mu[b];
  return step;
}

FockOperator build_A(std::size_t n, const LocalState& mu, const LocalState& alpha, bool hat,
                     const TruncatedSpace& space) {
  if (space.modes() + 1 != n) throw DimensionError("Fock space must have n-1 modes");
  FockOperator op(space, n);
  const Polynomial g = exit_rate(alpha);
  for (std::size_t s = 0; s < space.dim(); ++s) {
    const auto occ = space.occupation(s);
    auto step = apply_A(n, mu, alpha, occ);
    if (!step) continue;
    auto out = space.index(step->out);
    if (!out) continue;
    const Polynomial w = Polynomial::variable(n, step->species);
    op.add_entry(*out, s, hat ? w * (w + g) : w);
  }
  return op;
}

CompiledA compile_A(std::size_t n, const LocalState& mu, const LocalState& alpha, const TruncatedSpace& space) {
  if (space.modes() + 1 != n) throw DimensionError("Fock space must have n-1 modes");
  CompiledA c;
  c.target.assign(space.dim(), -1);
  c.species.assign(space.dim(), 0);
  for (std::size_t s = 0; s < space.dim(); ++s) {
    auto step = apply_A(n, mu, alpha, space.occupation(s));
    if (!step) continue;
    if (auto out = space.index(step->out)) {
      c.target[s] = static_cast<std::int32_t>(*out);
      c.species[s] = static_cast<std::uint8_t>(step->species);
    }
  }
  return c;
}

Polynomial trace_compiled(std::span<const CompiledA* const> ops, std::size_t n) {
  if (ops.empty()) throw InputError("trace of an empty operator product");
  const std::size_t dim = ops.front()->target.size();
  std::map<Monomial, Integer> acc;
  Monomial m(n);
  for (std::size_t s = 0; s < dim; ++s) {
    std::int64_t cur = static_cast<std::int64_t>(s);
    for (std::size_t a = 0; a < n; ++a) m[a] = 0;
    for (std::size_t i = ops.size(); i-- > 0;) {
      const auto* op = ops[i];
      const auto next = op->target[static_cast<std::size_t>(cur)];
      if (next < 0) {
        cur = -1;
        break;
      }
      ++m[op->species[static_cast<std::size_t>(cur)] - 1];
      cur = next;
    }
    if (cur == static_cast<std::int64_t>(s)) acc[m] += 1;
  }
  std::vector<Polynomial::Term> terms;
  terms.reserve(acc.size());
  for (auto& [mono, c] : acc) terms.push_back({mono, c});
  return Polynomial::from_terms(n, std::move(terms));
}

// ---------------------------------------------------------------------------
// Hat relation.

namespace {

// Coefficients in the hat check are cubic forms; keys pack the output
// occupation (5 bits per mode) above the monomial (2 bits per variable).
struct Packed {
  std::size_t n;

  std::uint64_t key(std::span<const int> occ, std::span<const int> exps) const {
    std::uint64_t k = 0;
    for (int o : occ) k = (k << 5) | static_cast<std::uint64_t>(o);
    for (int e : exps) k = (k << 2) | static_cast<std::uint64_t>(e);
    return k;
  }
};

struct Accumulator {
  std::vector<std::pair<std::uint64_t, std::int64_t>> items;

  void add(std::uint64_t key, std::int64_t c) { items.emplace_back(key, c); }

  /// Merges equal keys; returns the keys with nonzero totals.
  std::vector<std::pair<std::uint64_t, std::int64_t>> residual() {
    std::sort(items.begin(), items.end());
    std::vector<std::pair<std::uint64_t, std::int64_t>> out;
    for (std::size_t i = 0; i < items.size();) {
      std::size_t j = i;
      std::int64_t total = 0;
      while (j < items.size() && items[j].first == items[i].first) total += items[j++].second;
      if (total != 0) out.emplace_back(items[i].first, total);
      i = j;
    }
    return out;
  }
};

struct Path {
  std::vector<int> out;
  std::size_t first;   // species of the right factor
  std::size_t second;  // species of the left factor
};

std::optional<Path> apply_pair(std::size_t n, const LocalState& mu_left, const LocalState& left,
                               const LocalState& mu_right, const LocalState& right, std::span<const int> occ) {
  auto r = apply_A(n, mu_right, right, occ);
  if (!r) return std::nullopt;
  auto l = apply_A(n, mu_left, left, r->out);
  if (!l) return std::nullopt;
  return Path{std::move(l->out), r->species, l->species};
}

struct TupleChecker {
  std::size_t n;
  Packed pack{n};
  std::vector<int> exps = std::vector<int>(n, 0);

  void emit(Accumulator& acc, const Path& p, std::size_t extra, std::int64_t c) {
    std::fill(exps.begin(), exps.end(), 0);
    ++exps[p.first - 1];
    ++exps[p.second - 1];
    ++exps[extra - 1];
    acc.add(pack.key(p.out, exps), c);
  }

  /// LHS - RHS applied to |occ>; returns the nonzero residual entries and
  /// whether either side had any nonzero term.
  std::vector<std::pair<std::uint64_t, std::int64_t>> residual(const HatTuple& t,
                                                               const std::vector<LocalTransition>& preds,
                                                               const std::vector<LocalTransition>& succs,
                                                               std::span<const int> occ, bool& active) {
    Accumulator acc;
    for (const auto& pr : preds) {
      if (auto p = apply_pair(n, t.mu, pr.gamma, t.nu, pr.delta, occ)) {
        emit(acc, *p, pr.rate_species, 1);
        active = true;
      }
    }
    for (const auto& sc : succs) {
      if (auto p = apply_pair(n, sc.gamma, t.alpha, sc.delta, t.beta, occ)) {
        emit(acc, *p, sc.rate_species, -1);
        active = true;
      }
    }
    if (auto p = apply_pair(n, t.mu, t.alpha, t.nu, t.beta, occ)) {
      active = true;
      // -g(beta) + gbar(nu) - [w_second + g(alpha) - w_first - g(beta)]
      for (std::size_t a = 1; a <= n; ++a) {
        std::int64_t c = -t.beta.count(a) - t.alpha.count(a) + t.beta.count(a);
        if (a < n) c += t.nu.count(a);
        if (c != 0) emit(acc, *p, a, c);
      }
      emit(acc, *p, p->second, -1);
      emit(acc, *p, p->first, 1);
    }
    return acc.residual();
  }
};

std::string describe(std::size_t n, std::uint64_t key, std::int64_t c) {
  std::vector<int> exps(n);
  for (std::size_t a = n; a-- > 0;) {
    exps[a] = static_cast<int>(key & 3);
    key >>= 2;
  }
  std::ostringstream os;
  std::vector<int> occ(n - 1);
  for (std::size_t b = n - 1; b-- > 0;) {
    occ[b] = static_cast<int>(key & 31);
    key >>= 5;
  }
  os << c;
  for (std::size_t a = 0; a < n; ++a) {
    if (exps[a] != 0) os << "*w" << a + 1 << (exps[a] > 1 ? "^" + std::to_string(exps[a]) : "");
  }
  os << " at |";
  for (std::size_t b = 0; b < occ.size(); ++b) os << (b ? "," : "") << occ[b];
  os << ">";
  return os.str();
}

struct Partial {
  HatReport report;
  std::size_t witness_rank = static_cast<std::size_t>(-1);
};

}  // namespace

HatReport check_hat_relation(std::size_t n, int bound, unsigned threads) {
  if (n < 2) throw InputError("hat relation needs n >= 2");
  if (bound < 1) throw InputError("hat relation bound must be >= 1");
  if (n > 16 || n - 1 > 6 || 4 * bound + 1 >= 32) throw InputError("hat relation parameters too large");

  const auto alphas = enumerate_local_states(std::vector<int>(n, bound));
  const auto mus = enumerate_local_states(std::vector<int>(n - 1, bound));
  const std::size_t total = alphas.size() * alphas.size();
  threads = std::max(1u, threads);

  auto work = [&](unsigned tid, Partial& part) {
    TupleChecker checker{n};
    for (std::size_t ab = tid; ab < total; ab += threads) {
      const LocalState& alpha = alphas[ab / alphas.size()];
      const LocalState& beta = alphas[ab % alphas.size()];
      const auto preds = local_predecessors(alpha, beta);
      std::vector<int> limit(n - 1);
      for (std::size_t b = 0; b + 1 < n; ++b) limit[b] = alpha[b] + beta[b] + 1;
      const auto inputs = enumerate_local_states(limit);
      for (std::size_t mn = 0; mn < mus.size() * mus.size(); ++mn) {
        HatTuple t{alpha, beta, mus[mn / mus.size()], mus[mn % mus.size()]};
        const auto succs = local_transitions(t.mu, t.nu);
        bool active = false;
        bool failed = false;
        for (const auto& in : inputs) {
          ++part.report.columns;
          const auto res = checker.residual(t, preds, succs, in.mult(), active);
          if (!res.empty() && !failed) {
            failed = true;
            const std::size_t rank = ab * mus.size() * mus.size() + mn;
            if (rank < part.witness_rank) {
              part.witness_rank = rank;
              part.report.witness = t;
              part.report.witness_input.assign(in.mult().begin(), in.mult().end());
              std::string detail;
              for (const auto& [k, c] : res) detail += (detail.empty() ? "" : "; ") + describe(n, k, c);
              part.report.witness_detail = detail;
            }
          }
        }
        ++part.report.tuples;
        if (failed) {
          ++part.report.failures;
        } else if (active) {
          ++part.report.nontrivial;
        } else {
          ++part.report.trivial;
        }
      }
    }
  };

  std::vector<Partial> parts(threads);
  if (threads == 1) {
    work(0, parts[0]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, std::ref(parts[t]));
    for (auto& th : pool) th.join();
  }

  HatReport report;
  report.n = n;
  report.bound = bound;
  std::size_t best = static_cast<std::size_t>(-1);
  for (auto& p : parts) {
    report.tuples += p.report.tuples;
    report.columns += p.report.columns;
    report.trivial += p.report.trivial;
    report.nontrivial += p.report.nontrivial;
    report.failures += p.report.failures;
    if (p.witness_rank < best) {
      best = p.witness_rank;
      report.witness = p.report.witness;
      report.witness_input = p.report.witness_input;
      report.witness_detail = p.report.witness_detail;
    }
  }
  report.ok = report.failures == 0;
  return report;
}

}  // namespace tazrp
