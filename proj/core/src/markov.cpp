#include "tazrp/markov.hpp"

#include <algorithm>

#include "tazrp/errors.hpp"

namespace tazrp {

std::vector<LocalTransition> local_transitions(const LocalState& alpha, const LocalState& beta) {
  if (alpha.species_count() != beta.species_count()) throw DimensionError("local_transitions: species counts differ");
  const std::vector<int> b = beta.multiset();
  const std::size_t n = beta.species_count();
  std::vector<LocalTransition> out;
  out.reserve(b.size());
  // Outcome k moves b[k-1..r-1]; build them from k = r downwards so each step
  // moves one more particle.
  LocalState gamma = alpha;
  LocalState delta = beta;
  std::vector<LocalTransition> rev;
  for (std::size_t k = b.size(); k >= 1; --k) {
    const auto species = static_cast<std::size_t>(b[k - 1]);
    ++gamma.count(species);
    --delta.count(species);
    rev.push_back({gamma, delta, species});
  }
  (void)n;
  out.assign(rev.rbegin(), rev.rend());
  return out;
}

std::vector<LocalTransition> local_predecessors(const LocalState& alpha, const LocalState& beta) {
  if (alpha.species_count() != beta.species_count()) throw DimensionError("local_predecessors: species counts differ");
  const std::size_t n = alpha.species_count();
  std::size_t floor_species = 1;
  for (std::size_t a = n; a >= 1; --a) {
    if (beta.count(a) > 0) {
      floor_species = a;
      break;
    }
  }
  // Moved multisets S with S <= alpha and min(S) >= max(beta).
  std::vector<int> bounds(n, 0);
  for (std::size_t a = floor_species; a <= n; ++a) bounds[a - 1] = alpha.count(a);
  std::vector<LocalTransition> out;
  for (const LocalState& moved : enumerate_local_states(bounds)) {
    if (moved.empty()) continue;
    std::size_t min_species = 0;
    for (std::size_t a = 1; a <= n; ++a) {
      if (moved.count(a) > 0) {
        min_species = a;
        break;
      }
    }
    out.push_back({alpha - moved, beta + moved, min_species});
  }
  return out;
}

Polynomial exit_rate(const LocalState& beta) {
  const std::size_t n = beta.species_count();
  std::vector<Polynomial::Term> terms;
  for (std::size_t a = 1; a <= n; ++a) {
    if (beta.count(a) != 0) terms.push_back({Monomial::variable(n, a), beta.count(a)});
  }
  return Polynomial::from_terms(n, std::move(terms));
}

double exit_rate(const LocalState& beta, std::span<const double> w) {
  if (w.size() != beta.species_count()) throw DimensionError("exit_rate: rate vector length differs from n");
  double g = 0.0;
  for (std::size_t a = 1; a <= w.size(); ++a) g += w[a - 1] * beta.count(a);
  return g;
}

std::vector<Transition> transitions(const Configuration& c) {
  const std::size_t length = c.length();
  std::vector<Transition> out;
  for (std::size_t i = 0; i < length; ++i) {
    const std::size_t j = (i + 1) % length;
    const auto local = local_transitions(c.site(i), c.site(j));
    for (std::size_t k = 0; k < local.size(); ++k) {
      Configuration target = c;
      target.site(i) = local[k].gamma;
      target.site(j) = local[k].delta;
      out.push_back({i, k + 1, std::move(target), local[k].rate_species});
    }
  }
  return out;
}

GeneratorMatrix::GeneratorMatrix(SectorIndex index, std::vector<std::vector<Entry>> columns)
    : index_(std::move(index)), columns_(std::move(columns)) {
  if (columns_.size() != index_.size()) throw InternalError("generator column count differs from sector size");
}

Polynomial GeneratorMatrix::entry(std::size_t row, std::size_t col) const {
  const auto& c = columns_.at(col);
  auto it = std::lower_bound(c.begin(), c.end(), row, [](const Entry& e, std::size_t r) { return e.row < r; });
  if (it != c.end() && it->row == row) return it->value;
  return Polynomial(sector().species_count());
}

Polynomial GeneratorMatrix::column_sum(std::size_t col) const {
  Polynomial s(sector().species_count());
  for (const auto& e : columns_.at(col)) s += e.value;
  return s;
}

std::size_t GeneratorMatrix::nonzeros() const {
  std::size_t nnz = 0;
  for (const auto& c : columns_) nnz += c.size();
  return nnz;
}

GeneratorMatrix build_generator(const Sector& s) {
  SectorIndex index(s);
  const std::size_t n = s.species_count();
  std::vector<std::vector<GeneratorMatrix::Entry>> columns(index.size());
  for (std::size_t col = 0; col < index.size(); ++col) {
    const Configuration& sigma = index[col];
    std::map<std::size_t, Polynomial> acc;
    Polynomial diagonal(n);
    for (std::size_t i = 0; i < sigma.length(); ++i) diagonal -= exit_rate(sigma.site((i + 1) % sigma.length()));
    acc.emplace(col, std::move(diagonal));
    for (const auto& t : transitions(sigma)) {
      const std::size_t row = index.index_of(t.target);
      auto [it, inserted] = acc.try_emplace(row, n);
      it->second += Polynomial::variable(n, t.rate_species);
    }
    auto& column = columns[col];
    column.reserve(acc.size());
    for (auto& [row, value] : acc) {
      if (!value.is_zero()) column.push_back({row, std::move(value)});
    }
  }
  return GeneratorMatrix(std::move(index), std::move(columns));
}

SteadyCheck check_steady(const GeneratorMatrix& h, const std::map<Configuration, Polynomial>& p) {
  const std::size_t n = h.sector().species_count();
  const auto& index = h.index();
  std::vector<const Polynomial*> values(index.size(), nullptr);
  for (std::size_t i = 0; i < index.size(); ++i) {
    auto it = p.find(index[i]);
    if (it == p.end()) {
      throw InputError("steady-state map is missing configuration " + format_configuration(index[i]));
    }
    if (it->second.ambient() != n) throw DimensionError("steady-state polynomial has the wrong ambient ring");
    values[i] = &it->second;
  }
  std::vector<Polynomial> result(index.size(), Polynomial(n));
  for (std::size_t col = 0; col < h.dim(); ++col) {
    for (const auto& e : h.column(col)) result[e.row].add_product(e.value, *values[col]);
  }
  SteadyCheck check;
  for (std::size_t row = 0; row < result.size(); ++row) {
    if (!result[row].is_zero()) {
      check.ok = false;
      check.row = index[row];
      check.residual = std::move(result[row]);
      return check;
    }
  }
  check.residual = Polynomial(n);
  return check;
}

SteadyCheck check_steady(const Sector& s, const std::map<Configuration, Polynomial>& p) {
  return check_steady(build_generator(s), p);
}

}  // namespace tazrp
