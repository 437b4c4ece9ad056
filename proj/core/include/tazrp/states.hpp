#pragma once

// Local states, chain configurations, sectors S(m) and multiline states B(m).
//
// Species are 1-based in the public API (species a has multiplicity
// `count(a)`), sites are 0-based internally and all site arithmetic is
// modulo L.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace tazrp {

/// Occupation of one site, stored in multiplicity representation.
class LocalState {
 public:
  using Storage = boost::container::small_vector<int, 8>;

  LocalState() = default;
  /// Empty site of an n-species system.
  explicit LocalState(std::size_t n) : mult_(n, 0) {}
  explicit LocalState(std::span<const int> mult);
  LocalState(std::initializer_list<int> mult);

  /// Builds from a non-decreasing list of species labels in [1, n].
  static LocalState from_multiset(std::size_t n, std::span<const int> species);

  std::size_t species_count() const noexcept { return mult_.size(); }
  /// Multiplicity of 1-based species `a`.
  int count(std::size_t a) const { return mult_[a - 1]; }
  int& count(std::size_t a) { return mult_[a - 1]; }
  /// 0-based access.
  int operator[](std::size_t i) const { return mult_[i]; }
  int& operator[](std::size_t i) { return mult_[i]; }
  std::span<const int> mult() const noexcept { return {mult_.data(), mult_.size()}; }

  int total() const noexcept;
  bool empty() const noexcept { return total() == 0; }
  /// Sorted species labels, e.g. (3,0,2,1) -> {1,1,1,3,3,4}.
  std::vector<int> multiset() const;
  /// First `k` components, i.e. the bar-projection onto species 1..k.
  LocalState truncated(std::size_t k) const;

  LocalState& operator+=(const LocalState& other);
  LocalState& operator-=(const LocalState& other);
  friend LocalState operator+(LocalState a, const LocalState& b) { return a += b; }
  friend LocalState operator-(LocalState a, const LocalState& b) { return a -= b; }

  friend bool operator==(const LocalState&, const LocalState&) = default;
  friend std::strong_ordering operator<=>(const LocalState& a, const LocalState& b) {
    return std::lexicographical_compare_three_way(a.mult_.begin(), a.mult_.end(), b.mult_.begin(),
                                                  b.mult_.end());
  }

 private:
  Storage mult_;
};

/// (sigma_1, ..., sigma_L) on the periodic chain.
class Configuration {
 public:
  Configuration() = default;
  Configuration(std::size_t n, std::vector<LocalState> sites);
  /// All-empty chain of length L.
  Configuration(std::size_t n, std::size_t length) : n_(n), sites_(length, LocalState(n)) {}

  std::size_t species_count() const noexcept { return n_; }
  std::size_t length() const noexcept { return sites_.size(); }
  const LocalState& site(std::size_t i) const { return sites_[i]; }
  LocalState& site(std::size_t i) { return sites_[i]; }
  const std::vector<LocalState>& sites() const noexcept { return sites_; }

  /// Component-wise sum over sites (the sector multiplicity).
  std::vector<int> totals() const;
  /// Restriction to species 1..k at every site.
  Configuration truncated(std::size_t k) const;

  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend std::strong_ordering operator<=>(const Configuration& a, const Configuration& b) {
    return std::lexicographical_compare_three_way(a.sites_.begin(), a.sites_.end(), b.sites_.begin(),
                                                  b.sites_.end());
  }

 private:
  std::size_t n_ = 0;
  std::vector<LocalState> sites_;
};

struct ConfigurationHash {
  std::size_t operator()(const Configuration& c) const noexcept;
};

/// S(m) on a chain of length L. Only basic sectors (all m_a >= 1) are valid.
class Sector {
 public:
  Sector() = default;
  /// Throws SectorError unless the sector is basic and L >= 2.
  Sector(std::size_t length, std::vector<int> m);

  std::size_t species_count() const noexcept { return m_.size(); }
  std::size_t length() const noexcept { return length_; }
  const std::vector<int>& multiplicities() const noexcept { return m_; }
  int m(std::size_t a) const { return m_[a - 1]; }
  /// ell_a = m_1 + ... + m_a.
  int ell(std::size_t a) const;

  /// prod_a binom(L + m_a - 1, m_a).
  std::uint64_t size() const;
  /// prod_a binom(L - 1 + ell_a, ell_a) = #B(m).
  std::uint64_t multiline_size() const;
  /// The sector S(m_1, ..., m_k) of the k-species process.
  Sector prefix(std::size_t k) const;
  bool contains(const Configuration& c) const;

  friend bool operator==(const Sector&, const Sector&) = default;
  std::string to_string() const;

 private:
  std::size_t length_ = 0;
  std::vector<int> m_;
};

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// All configurations of the sector in lexicographic order of the flattened
/// multiplicity vectors (site 1 components first).
std::vector<Configuration> enumerate_sector(const Sector& s);

/// Every local state with 0 <= alpha^a <= bounds[a-1], lexicographic order.
std::vector<LocalState> enumerate_local_states(std::span<const int> bounds);

/// Dense index of the configurations of a sector.
class SectorIndex {
 public:
  explicit SectorIndex(const Sector& s);
  const Sector& sector() const noexcept { return sector_; }
  std::size_t size() const noexcept { return configs_.size(); }
  const std::vector<Configuration>& configurations() const noexcept { return configs_; }
  const Configuration& operator[](std::size_t i) const { return configs_[i]; }
  /// Throws InputError if `c` is not in the sector.
  std::size_t index_of(const Configuration& c) const;
  bool contains(const Configuration& c) const { return lookup_.count(c) != 0; }

 private:
  Sector sector_;
  std::vector<Configuration> configs_;
  std::unordered_map<Configuration, std::size_t, ConfigurationHash> lookup_;
};

/// (sigma_L, sigma_1, ..., sigma_{L-1}).
Configuration cyclic_shift(const Configuration& c);

/// x = x^n (x) ... (x) x^1. rows[a-1] is the row x^a; row a sums to ell_a.
struct MultilineState {
  std::vector<std::vector<int>> rows;

  std::size_t levels() const noexcept { return rows.size(); }
  const std::vector<int>& row(std::size_t a) const { return rows[a - 1]; }
  friend bool operator==(const MultilineState&, const MultilineState&) = default;
  friend auto operator<=>(const MultilineState&, const MultilineState&) = default;
};

/// Calls fn for every composition of `total` into `parts` nonnegative parts,
/// in lexicographic order.
void for_each_composition(std::size_t parts, int total, const std::function<void(const std::vector<int>&)>& fn);

/// All multiline states of B(m), ordered lexicographically on (x^1, x^2, ..., x^n).
std::vector<MultilineState> enumerate_multiline(const Sector& s);

/// Canonical text: multiset form ("e|13|2") when n <= 9, otherwise the
/// multiplicity form ("0,0;1,1").
std::string format_configuration(const Configuration& c);
std::string format_multiset(const Configuration& c);
std::string format_multiplicity(const Configuration& c);
std::string format_local_state(const LocalState& s);

/// Accepts both text forms. The multiset form requires n <= 9. The
/// multiplicity form is detected by the presence of ',' or ';'.
Configuration parse_configuration(std::string_view text, std::size_t n);

}  // namespace tazrp
