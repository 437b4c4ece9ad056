#pragma once

// Bosonic Fock space operators on F^{(x)modes}, truncated at per-mode caps.
//
// Basis states are occupation vectors; a+|m> = |m+1>, a-|m> = |m-1>
// (a-|0> = 0), k|m> = delta_{m,0}|m>, d = 1 - k. Raising out of the cap level
// gives zero.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tazrp/polyring.hpp"
#include "tazrp/states.hpp"

namespace tazrp {

class TruncatedSpace {
 public:
  TruncatedSpace() = default;
  explicit TruncatedSpace(std::vector<int> caps);

  std::size_t modes() const noexcept { return caps_.size(); }
  const std::vector<int>& caps() const noexcept { return caps_; }
  int cap(std::size_t b) const { return caps_[b]; }
  /// prod (cap_b + 1); the zero-mode space has dimension 1.
  std::size_t dim() const noexcept { return dim_; }

  /// Mixed-radix index, mode 0 most significant. Returns nullopt if an
  /// occupation is negative or above its cap.
  std::optional<std::size_t> index(std::span<const int> occ) const;
  std::vector<int> occupation(std::size_t idx) const;
  /// Same space with every cap raised by `extra`.
  TruncatedSpace widened(int extra) const;

  friend bool operator==(const TruncatedSpace&, const TruncatedSpace&) = default;

 private:
  std::vector<int> caps_;
  std::vector<std::size_t> stride_;
  std::size_t dim_ = 1;
};

/// Sparse operator with polynomial matrix elements, stored by input column.
class FockOperator {
 public:
  struct Entry {
    std::size_t out;
    Polynomial value;
  };

  FockOperator() = default;
  /// The zero operator; `nvars` is the ambient ring of the entries.
  FockOperator(TruncatedSpace space, std::size_t nvars);

  static FockOperator identity(const TruncatedSpace& space, std::size_t nvars);
  static FockOperator raising(const TruncatedSpace& space, std::size_t mode, std::size_t nvars);
  static FockOperator lowering(const TruncatedSpace& space, std::size_t mode, std::size_t nvars);
  static FockOperator vacuum(const TruncatedSpace& space, std::size_t mode, std::size_t nvars);
  static FockOperator nonvacuum(const TruncatedSpace& space, std::size_t mode, std::size_t nvars);

  const TruncatedSpace& space() const noexcept { return space_; }
  std::size_t nvars() const noexcept { return nvars_; }
  const std::vector<Entry>& column(std::size_t in) const { return cols_[in]; }
  /// Matrix element <out|X|in>.
  Polynomial element(std::size_t out, std::size_t in) const;
  std::size_t nonzeros() const;
  bool is_zero() const { return nonzeros() == 0; }

  void add_entry(std::size_t out, std::size_t in, const Polynomial& value);

  /// X applied to a sparse vector of (basis index, coefficient) pairs.
  std::vector<std::pair<std::size_t, Polynomial>> apply(std::span<const std::pair<std::size_t, Polynomial>> v) const;

  /// Operator product: (X * Y)|s> = X(Y|s>).
  friend FockOperator operator*(const FockOperator& x, const FockOperator& y);
  friend FockOperator operator+(const FockOperator& x, const FockOperator& y);
  friend FockOperator operator-(const FockOperator& x, const FockOperator& y);
  friend FockOperator operator*(const Polynomial& c, const FockOperator& x);
  friend bool operator==(const FockOperator& x, const FockOperator& y);

  /// X (x) Y on the concatenated modes (modes of X first).
  static FockOperator tensor(const FockOperator& x, const FockOperator& y);

  Polynomial trace() const;
  /// Same operator with entries viewed in a ring of `nvars` >= nvars() variables.
  FockOperator extended(std::size_t nvars) const;

 private:
  TruncatedSpace space_;
  std::size_t nvars_ = 0;
  std::vector<std::vector<Entry>> cols_;
};

/// Tr over the truncated space of ops[0] * ops[1] * ... * ops[L-1].
/// Throws InputError on an empty list, DimensionError on mixed spaces.
Polynomial trace_product(std::span<const FockOperator> ops);

/// A^{(n)}_{mu,alpha} (or its hat version) on the n-1 modes of `space`.
FockOperator build_A(std::size_t n, const LocalState& mu, const LocalState& alpha, bool hat,
                     const TruncatedSpace& space);

/// The action of A_{mu,alpha} (hat = false) on a single basis state, which is
/// always either zero or w_r times another basis state.
struct AStep {
  std::vector<int> out;
  std::size_t species;
};
std::optional<AStep> apply_A(std::size_t n, const LocalState& mu, const LocalState& alpha, std::span<const int> occ);

/// A_{mu,alpha} compiled to a table over a truncated basis: target[s] is the
/// image index of s or -1, species[s] the rate species of the surviving term.
struct CompiledA {
  std::vector<std::int32_t> target;
  std::vector<std::uint8_t> species;
};
CompiledA compile_A(std::size_t n, const LocalState& mu, const LocalState& alpha, const TruncatedSpace& space);

/// Tr(ops[0] ... ops[L-1]) for compiled operators; result in n variables.
Polynomial trace_compiled(std::span<const CompiledA* const> ops, std::size_t n);

struct HatTuple {
  LocalState alpha, beta, mu, nu;
};

struct HatReport {
  bool ok = true;
  std::size_t n = 0;
  int bound = 0;
  std::size_t tuples = 0;
  /// Basis columns on which the identity was compared.
  std::size_t columns = 0;
  /// Tuples whose two sides vanish identically / are nonzero but equal.
  std::size_t trivial = 0;
  std::size_t nontrivial = 0;
  std::size_t failures = 0;
  std::optional<HatTuple> witness;
  std::vector<int> witness_input;
  std::string witness_detail;
};

/// Checks the generalized hat relation for every alpha, beta in {0..bound}^n
/// and mu, nu in {0..bound}^{n-1} as an identity of untruncated operators.
/// Each side is a sum of products of two A-type operators, whose action on
/// |s> only depends on min(s_b, alpha^b + beta^b + 1) up to a shift, so
/// comparing the columns with s_b <= alpha^b + beta^b + 1 is exhaustive.
/// With `threads` > 1 tuples are split across workers.
HatReport check_hat_relation(std::size_t n, int bound, unsigned threads = 1);

}  // namespace tazrp
