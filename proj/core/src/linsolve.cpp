// Sparse Gaussian elimination for ker H(w), over Z/p and over Q.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>

#include "tazrp/errors.hpp"
#include "tazrp/markov.hpp"

namespace tazrp {

namespace {

__extension__ typedef unsigned __int128 u128;

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

struct ModP {
  std::uint64_t v = 0;

  friend ModP operator+(ModP a, ModP b) {
    std::uint64_t s = a.v + b.v;
    if (s >= kPrime) s -= kPrime;
    return {s};
  }
  friend ModP operator-(ModP a, ModP b) { return {a.v >= b.v ? a.v - b.v : a.v + kPrime - b.v}; }
  friend ModP operator*(ModP a, ModP b) {
    const u128 prod = static_cast<u128>(a.v) * b.v;
    std::uint64_t lo = static_cast<std::uint64_t>(prod & kPrime);
    std::uint64_t hi = static_cast<std::uint64_t>(prod >> 61);
    std::uint64_t s = lo + hi;
    while (s >= kPrime) s -= kPrime;
    return {s};
  }
  friend ModP operator/(ModP a, ModP b) { return a * inverse(b); }
  friend ModP operator-(ModP a) { return ModP{} - a; }
  friend bool operator==(ModP a, ModP b) = default;

  static ModP inverse(ModP b) {
    ModP r{1};
    ModP base = b;
    for (std::uint64_t e = kPrime - 2; e != 0; e >>= 1) {
      if (e & 1) r = r * base;
      base = base * base;
    }
    return r;
  }
};

bool is_zero(const ModP& x) { return x.v == 0; }
bool is_zero(const Rational& x) { return x == 0; }

std::optional<ModP> to_modp(const Rational& q) {
  const Integer p = kPrime;
  Integer num = boost::multiprecision::numerator(q) % p;
  if (num < 0) num += p;
  const Integer den = boost::multiprecision::denominator(q) % p;
  if (den == 0) return std::nullopt;
  return ModP{num.convert_to<std::uint64_t>()} / ModP{den.convert_to<std::uint64_t>()};
}

template <class F>
using SparseRow = std::map<std::size_t, F>;

template <class F>
struct Echelon {
  /// pivots[j] = reduced row whose leading column is j, if any.
  std::vector<std::optional<SparseRow<F>>> pivots;
  std::size_t rank = 0;
};

template <class F>
Echelon<F> eliminate(std::vector<SparseRow<F>> rows, std::size_t cols) {
  Echelon<F> out;
  out.pivots.resize(cols);
  std::vector<bool> used(rows.size(), false);
  for (std::size_t j = 0; j < cols; ++j) {
    std::size_t best = rows.size();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (used[r] || !rows[r].count(j)) continue;
      if (best == rows.size() || rows[r].size() < rows[best].size()) best = r;
    }
    if (best == rows.size()) continue;
    used[best] = true;
    const SparseRow<F>& piv = rows[best];
    const F lead = piv.at(j);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (used[r]) continue;
      auto it = rows[r].find(j);
      if (it == rows[r].end()) continue;
      const F factor = it->second / lead;
      for (const auto& [c, v] : piv) {
        auto [slot, inserted] = rows[r].try_emplace(c, F{});
        slot->second = slot->second - factor * v;
        if (is_zero(slot->second)) rows[r].erase(slot);
      }
    }
    out.pivots[j] = std::move(rows[best]);
    ++out.rank;
  }
  return out;
}

template <class F, class Convert>
std::vector<SparseRow<F>> substituted_rows(const GeneratorMatrix& h, std::span<const Rational> w, Convert convert,
                                           bool& ok) {
  std::vector<SparseRow<F>> rows(h.dim());
  ok = true;
  for (std::size_t col = 0; col < h.dim(); ++col) {
    for (const auto& e : h.column(col)) {
      const Rational value = eval(e.value, w);
      if (value == 0) continue;
      auto converted = convert(value);
      if (!converted) {
        ok = false;
        return {};
      }
      rows[e.row].emplace(col, *converted);
    }
  }
  return rows;
}

void check_rates(const GeneratorMatrix& h, std::span<const Rational> w) {
  if (w.size() != h.sector().species_count()) throw DimensionError("rate vector length differs from n");
}

}  // namespace

std::size_t kernel_dimension(const GeneratorMatrix& h, std::span<const Rational> w) {
  check_rates(h, w);
  bool ok = false;
  auto mod_rows = substituted_rows<ModP>(h, w, to_modp, ok);
  if (ok) {
    const auto ech = eliminate(std::move(mod_rows), h.dim());
    // Columns of H(w) sum to zero, so rank over Q is at most dim - 1, and the
    // rank modulo p never exceeds the rank over Q.
    if (ech.rank + 1 == h.dim()) return 1;
  }
  auto rows = substituted_rows<Rational>(h, w, [](const Rational& q) { return std::optional<Rational>(q); }, ok);
  return h.dim() - eliminate(std::move(rows), h.dim()).rank;
}

KernelSolution kernel_solve_numeric(const GeneratorMatrix& h, std::span<const Rational> w) {
  check_rates(h, w);
  for (const auto& wa : w) {
    if (wa <= 0) throw InputError("kernel_solve_numeric requires positive rates");
  }
  bool ok = false;
  auto rows = substituted_rows<Rational>(h, w, [](const Rational& q) { return std::optional<Rational>(q); }, ok);
  const std::size_t dim = h.dim();
  auto ech = eliminate(std::move(rows), dim);
  if (ech.rank + 1 != dim) {
    throw SolverError("kernel of H(w) has dimension " + std::to_string(dim - ech.rank) + ", expected 1");
  }
  std::vector<Rational> x(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    if (!ech.pivots[j]) x[j] = 1;
  }
  for (std::size_t j = dim; j-- > 0;) {
    if (!ech.pivots[j]) continue;
    const auto& row = *ech.pivots[j];
    Rational acc = 0;
    for (const auto& [c, v] : row) {
      if (c != j) acc += v * x[c];
    }
    x[j] = -acc / row.at(j);
  }
  Rational total = 0;
  for (const auto& v : x) total += v;
  if (total == 0) throw SolverError("kernel vector has zero total");
  KernelSolution sol;
  for (std::size_t i = 0; i < dim; ++i) sol.unit_sum.emplace(h.index()[i], x[i] / total);
  return sol;
}

KernelSolution kernel_solve_numeric(const Sector& s, std::span<const Rational> w) {
  return kernel_solve_numeric(build_generator(s), w);
}

}  // namespace tazrp
