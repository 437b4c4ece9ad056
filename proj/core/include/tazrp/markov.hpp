#pragma once

// Transition rule, local and global Markov generators, and exact steady-state
// verification for the n-species inhomogeneous TAZRP.
//
// Convention: the generator entry (row, col) is the rate of the jump
// col -> row, so every column sums to zero and H * P = 0 is the stationarity
// condition for a probability vector P.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "tazrp/polyring.hpp"
#include "tazrp/states.hpp"

namespace tazrp {

/// One outcome of the adjacent pair (alpha, beta) -> (gamma, delta).
struct LocalTransition {
  LocalState gamma;
  LocalState delta;
  /// Species whose rate w_b governs the jump; equals min(gamma \ alpha).
  std::size_t rate_species;
  friend bool operator==(const LocalTransition&, const LocalTransition&) = default;
};

/// The |beta| outcomes of (alpha, beta); outcome k (1-based) moves the top
/// r-k+1 particles of beta (multiset order) to the left site.
std::vector<LocalTransition> local_transitions(const LocalState& alpha, const LocalState& beta);

/// All pairs (gamma, delta) with (gamma, delta) > (alpha, beta), i.e. the
/// pairs that jump into (alpha, beta), each with its rate species.
std::vector<LocalTransition> local_predecessors(const LocalState& alpha, const LocalState& beta);

/// g(beta) = w_1 beta^1 + ... + w_n beta^n.
Polynomial exit_rate(const LocalState& beta);
double exit_rate(const LocalState& beta, std::span<const double> w);

/// A jump of a chain configuration: particles leave site `site`+1 (mod L)
/// for `site`. `k` is the 1-based split point within the departing site.
struct Transition {
  std::size_t site;
  std::size_t k;
  Configuration target;
  std::size_t rate_species;
};

std::vector<Transition> transitions(const Configuration& c);

class GeneratorMatrix {
 public:
  struct Entry {
    std::size_t row;
    Polynomial value;
  };

  GeneratorMatrix(SectorIndex index, std::vector<std::vector<Entry>> columns);

  const SectorIndex& index() const noexcept { return index_; }
  const Sector& sector() const noexcept { return index_.sector(); }
  std::size_t dim() const noexcept { return columns_.size(); }
  /// Nonzero entries of column `col`, ascending by row.
  const std::vector<Entry>& column(std::size_t col) const { return columns_[col]; }
  Polynomial entry(std::size_t row, std::size_t col) const;
  Polynomial column_sum(std::size_t col) const;
  std::size_t nonzeros() const;

 private:
  SectorIndex index_;
  std::vector<std::vector<Entry>> columns_;
};

/// H over the canonical basis of the sector. Rates of (site, k) events that
/// reach the same target accumulate into one entry.
GeneratorMatrix build_generator(const Sector& s);

struct SteadyCheck {
  bool ok = true;
  /// On failure: first violated row and its residual (H P)[row].
  std::optional<Configuration> row;
  Polynomial residual;
};

/// Verifies H * P = 0 exactly. Throws InputError if P misses a configuration
/// of the sector.
SteadyCheck check_steady(const GeneratorMatrix& h, const std::map<Configuration, Polynomial>& p);
SteadyCheck check_steady(const Sector& s, const std::map<Configuration, Polynomial>& p);

/// Dimension of ker H(w) over the rationals. Uses a rank computation modulo a
/// large prime as a certificate when it proves rank = dim - 1, and falls back
/// to exact rational elimination otherwise.
std::size_t kernel_dimension(const GeneratorMatrix& h, std::span<const Rational> w);

struct KernelSolution {
  /// Probabilities normalized to total 1.
  std::map<Configuration, Rational> unit_sum;
};

/// Exact rational kernel of H(w). Requires every w_a > 0. Throws SolverError
/// when the kernel is not one-dimensional.
KernelSolution kernel_solve_numeric(const GeneratorMatrix& h, std::span<const Rational> w);
KernelSolution kernel_solve_numeric(const Sector& s, std::span<const Rational> w);

}  // namespace tazrp
