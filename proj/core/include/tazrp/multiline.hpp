#pragma once

// Combinatorial construction of the steady state from multiline states: the
// two-row pairing diagram, the embedding Phi, the weights varpi and W, and the
// projection pi.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "tazrp/mpf.hpp"
#include "tazrp/polyring.hpp"
#include "tazrp/states.hpp"

namespace tazrp {

/// A dot of the bottom row: box `site`, `ordinal`-th dot inside the box.
struct DotId {
  std::size_t site;
  std::size_t ordinal;
  friend bool operator==(const DotId&, const DotId&) = default;
};

struct HLine {
  std::size_t color;
  std::size_t start_site;  // box of the particle in the top row
  DotId partner;
  /// Bottom-row borders crossed, in scan order; border k separates boxes k and k+1.
  std::vector<std::size_t> borders;
};

struct PairingDiagram {
  std::size_t level = 0;
  Configuration top;
  std::vector<int> bottom;
  std::vector<HLine> hlines;
  /// dot_colors[site][ordinal]; 0 = uncolored.
  std::vector<std::vector<std::size_t>> dot_colors;
  /// col[k]: colors of the H-lines crossing bottom border k, in crossing order.
  std::vector<std::vector<std::size_t>> col;
};

/// Freedom allowed by the pairing rule. `order[b-1]`, when nonempty, lists the
/// sites of the species-b particles in the order they are paired (a
/// rearrangement of the default ascending list). `highest_dot` picks the
/// largest free ordinal in the capturing box instead of the smallest.
struct PairingPolicy {
  std::vector<std::vector<std::size_t>> order;
  bool highest_dot = false;
};

struct PairingResult {
  /// Phi_{x^a}(sigma), an a-species configuration.
  Configuration phi;
  /// varpi_{x^a}(sigma) in a variables.
  Polynomial weight;
  /// eta[k] is the species whose rate sits on border k.
  std::vector<std::size_t> eta;
  PairingDiagram diagram;
};

/// Pairs the (a-1)-species configuration `sigma` (top row) with the dot row
/// `xa` (bottom row). Throws InputError if the row does not carry more dots
/// than sigma has particles, InternalError if a line finds no partner.
PairingResult pair_and_project(std::size_t a, const Configuration& sigma, std::span<const int> xa,
                               const PairingPolicy& policy = {});

/// x^1 read as a 1-species configuration.
Configuration level_one(std::span<const int> x1);

struct MultilineImage {
  /// sigmas[a-1] = sigma^a, a = 1..n.
  std::vector<Configuration> sigmas;
  /// varpis[a-2] = varpi_{x^a}(sigma^{a-1}) in n variables, a = 2..n.
  std::vector<Polynomial> varpis;
  Polynomial weight;  // W(x)
  const Configuration& pi() const { return sigmas.back(); }
};

MultilineImage trace_levels(const MultilineState& x);
Configuration project_pi(const MultilineState& x);
Polynomial weight_W(const MultilineState& x);

/// P(sigma) = sum of W(x) over pi^{-1}(sigma), by one pass over B(m). When
/// `census` is given it receives #pi^{-1}(sigma) for every sigma.
SteadyState steady_state_multiline(const Sector& s, std::map<Configuration, std::uint64_t>* census = nullptr);

/// pi^{-1}(sigma), in the enumeration order of B(m).
std::vector<MultilineState> preimages(const Configuration& sigma);

}  // namespace tazrp
