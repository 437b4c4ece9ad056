#include "tazrp/multiline.hpp"

#include <algorithm>
#include <functional>

#include "tazrp/errors.hpp"

namespace tazrp {

namespace {

std::vector<std::size_t> default_order(const Configuration& sigma, std::size_t b) {
  std::vector<std::size_t> sites;
  for (std::size_t i = 0; i < sigma.length(); ++i) {
    for (int k = 0; k < sigma.site(i).count(b); ++k) sites.push_back(i);
  }
  return sites;
}

}  // namespace

PairingResult pair_and_project(std::size_t a, const Configuration& sigma, std::span<const int> xa,
                               const PairingPolicy& policy) {
  if (a < 2) throw InputError("pairing needs level a >= 2");
  if (sigma.species_count() + 1 != a) throw DimensionError("top row must be an (a-1)-species configuration");
  const std::size_t L = sigma.length();
  if (xa.size() != L) throw DimensionError("dot row length differs from the chain length");
  int dots = 0;
  for (int x : xa) {
    if (x < 0) throw InputError("negative dot count");
    dots += x;
  }
  int particles = 0;
  for (const auto& site : sigma.sites()) particles += site.total();
  if (dots <= particles) throw InputError("dot row must carry more dots than the top row has particles");
  if (!policy.order.empty() && policy.order.size() != a - 1) {
    throw InputError("pairing order must list one sequence per color");
  }

  PairingResult res;
  PairingDiagram& d = res.diagram;
  d.level = a;
  d.top = sigma;
  d.bottom.assign(xa.begin(), xa.end());
  d.dot_colors.resize(L);
  for (std::size_t j = 0; j < L; ++j) d.dot_colors[j].assign(static_cast<std::size_t>(xa[j]), 0);
  d.col.resize(L);

  for (std::size_t b = 1; b < a; ++b) {
    std::vector<std::size_t> sites = default_order(sigma, b);
    if (!policy.order.empty() && !policy.order[b - 1].empty()) {
      std::vector<std::size_t> given = policy.order[b - 1];
      std::vector<std::size_t> sorted = given;
      std::sort(sorted.begin(), sorted.end());
      if (sorted != sites) throw InputError("pairing order for color " + std::to_string(b) + " is not a rearrangement");
      sites = std::move(given);
    }
    for (std::size_t start : sites) {
      HLine line{b, start, {}, {}};
      std::size_t j = (start + L - 1) % L;
      bool found = false;
      for (std::size_t visited = 0; visited < L; ++visited) {
        auto& box = d.dot_colors[j];
        std::optional<std::size_t> pick;
        for (std::size_t o = 0; o < box.size(); ++o) {
          if (box[o] != 0) continue;
          pick = o;
          if (!policy.highest_dot) break;
        }
        if (pick) {
          box[*pick] = b;
          line.partner = {j, *pick};
          found = true;
          break;
        }
        const std::size_t border = (j + L - 1) % L;
        d.col[border].push_back(b);
        line.borders.push_back(border);
        j = border;
      }
      if (!found) throw InternalError("H-line of color " + std::to_string(b) + " found no partner dot");
      d.hlines.push_back(std::move(line));
    }
  }

  std::vector<LocalState> sites(L, LocalState(a));
  for (std::size_t j = 0; j < L; ++j) {
    for (std::size_t c : d.dot_colors[j]) ++sites[j].count(c == 0 ? a : c);
  }
  res.phi = Configuration(a, std::move(sites));

  Monomial m(a);
  res.eta.resize(L);
  for (std::size_t k = 0; k < L; ++k) {
    res.eta[k] = d.col[k].empty() ? a : *std::min_element(d.col[k].begin(), d.col[k].end());
    ++m[res.eta[k] - 1];
  }
  if (m[a - 1] == 0) throw InternalError("eta product not divisible by w" + std::to_string(a));
  --m[a - 1];
  res.weight = Polynomial::monomial(m);
  return res;
}

Configuration level_one(std::span<const int> x1) {
  std::vector<LocalState> sites;
  for (int x : x1) sites.push_back(LocalState{x});
  return Configuration(1, std::move(sites));
}

MultilineImage trace_levels(const MultilineState& x) {
  const std::size_t n = x.levels();
  if (n == 0) throw InputError("empty multiline state");
  MultilineImage img;
  img.sigmas.push_back(level_one(x.row(1)));
  Monomial w(n);
  for (std::size_t a = 2; a <= n; ++a) {
    auto r = pair_and_project(a, img.sigmas.back(), x.row(a));
    Polynomial varpi = r.weight.extended(n);
    w *= varpi.terms().front().monomial;
    img.varpis.push_back(std::move(varpi));
    img.sigmas.push_back(std::move(r.phi));
  }
  img.weight = Polynomial::monomial(w);
  return img;
}

Configuration project_pi(const MultilineState& x) { return trace_levels(x).pi(); }

Polynomial weight_W(const MultilineState& x) { return trace_levels(x).weight; }

namespace {

// Depth-first walk over B(m) sharing the pairing work of common prefixes
// x^1, ..., x^a. The visitor sees the full state, its image and its weight.
class MultilineWalk {
 public:
  using Visitor = std::function<void(const std::vector<const std::vector<int>*>&, const Configuration&, const Monomial&)>;

  MultilineWalk(const Sector& s, Visitor visit) : s_(s), visit_(std::move(visit)) {
    const std::size_t n = s.species_count();
    rows_.resize(n);
    for (std::size_t a = 1; a <= n; ++a) {
      for_each_composition(s.length(), s.ell(a), [&](const std::vector<int>& row) { rows_[a - 1].push_back(row); });
    }
    path_.resize(n);
  }

  void run() {
    const std::size_t n = s_.species_count();
    for (const auto& x1 : rows_[0]) {
      path_[0] = &x1;
      descend(2, level_one(x1), Monomial(n));
    }
  }

 private:
  void descend(std::size_t a, const Configuration& sigma, const Monomial& w) {
    const std::size_t n = s_.species_count();
    if (a > n) {
      visit_(path_, sigma, w);
      return;
    }
    for (const auto& xa : rows_[a - 1]) {
      path_[a - 1] = &xa;
      auto r = pair_and_project(a, sigma, xa);
      Monomial next = w;
      for (std::size_t v = 0; v < a; ++v) next[v] += r.weight.terms().front().monomial[v];
      descend(a + 1, r.phi, next);
    }
  }

  const Sector& s_;
  Visitor visit_;
  std::vector<std::vector<std::vector<int>>> rows_;
  std::vector<const std::vector<int>*> path_;
};

}  // namespace

SteadyState steady_state_multiline(const Sector& s, std::map<Configuration, std::uint64_t>* census) {
  const std::size_t n = s.species_count();
  std::map<Configuration, std::map<Monomial, Integer>> buckets;
  std::map<Configuration, std::uint64_t> counts;
  MultilineWalk walk(s, [&](const auto&, const Configuration& sigma, const Monomial& w) {
    buckets[sigma][w] += 1;
    ++counts[sigma];
  });
  walk.run();

  SteadyState ss{s, {}, Method::multiline};
  for (auto& c : enumerate_sector(s)) {
    std::vector<Polynomial::Term> terms;
    if (auto it = buckets.find(c); it != buckets.end()) {
      for (auto& [m, k] : it->second) terms.push_back({m, k});
    }
    ss.probs.emplace(std::move(c), Polynomial::from_terms(n, std::move(terms)));
  }
  if (ss.probs.size() != s.size() || buckets.size() > s.size()) {
    throw InternalError("projection left the sector " + s.to_string());
  }
  if (census) *census = std::move(counts);
  return ss;
}

std::vector<MultilineState> preimages(const Configuration& sigma) {
  const Sector s(sigma.length(), sigma.totals());
  std::vector<MultilineState> out;
  MultilineWalk walk(s, [&](const std::vector<const std::vector<int>*>& path, const Configuration& image,
                            const Monomial&) {
    if (image != sigma) return;
    MultilineState x;
    for (const auto* row : path) x.rows.push_back(*row);
    out.push_back(std::move(x));
  });
  walk.run();
  return out;
}

}  // namespace tazrp
