#include "tazrp/states.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "tazrp/errors.hpp"

namespace tazrp {

LocalState::LocalState(std::span<const int> mult) : mult_(mult.begin(), mult.end()) {
  for (int v : mult_) {
    if (v < 0) throw InputError("local state multiplicities must be nonnegative");
  }
}

LocalState::LocalState(std::initializer_list<int> mult) : LocalState(std::span<const int>(mult.begin(), mult.size())) {}

LocalState LocalState::from_multiset(std::size_t n, std::span<const int> species) {
  LocalState s(n);
  int prev = 0;
  for (int a : species) {
    if (a < 1 || static_cast<std::size_t>(a) > n) {
      throw InputError("species " + std::to_string(a) + " outside 1.." + std::to_string(n));
    }
    if (a < prev) throw InputError("multiset species must be non-decreasing");
    prev = a;
    ++s.count(static_cast<std::size_t>(a));
  }
  return s;
}

int LocalState::total() const noexcept { return std::accumulate(mult_.begin(), mult_.end(), 0); }

std::vector<int> LocalState::multiset() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(total()));
  for (std::size_t i = 0; i < mult_.size(); ++i) out.insert(out.end(), static_cast<std::size_t>(mult_[i]), static_cast<int>(i + 1));
  return out;
}

LocalState LocalState::truncated(std::size_t k) const {
  if (k > mult_.size()) throw DimensionError("cannot truncate to more species than present");
  return LocalState(std::span<const int>(mult_.data(), k));
}

LocalState& LocalState::operator+=(const LocalState& other) {
  if (other.mult_.size() != mult_.size()) throw DimensionError("local states of different species counts");
  for (std::size_t i = 0; i < mult_.size(); ++i) mult_[i] += other.mult_[i];
  return *this;
}

LocalState& LocalState::operator-=(const LocalState& other) {
  if (other.mult_.size() != mult_.size()) throw DimensionError("local states of different species counts");
  for (std::size_t i = 0; i < mult_.size(); ++i) {
    mult_[i] -= other.mult_[i];
    if (mult_[i] < 0) throw InputError("local state difference went negative");
  }
  return *this;
}

Configuration::Configuration(std::size_t n, std::vector<LocalState> sites) : n_(n), sites_(std::move(sites)) {
  for (const auto& s : sites_) {
    if (s.species_count() != n_) throw DimensionError("site species count differs from configuration");
  }
}

std::vector<int> Configuration::totals() const {
  std::vector<int> m(n_, 0);
  for (const auto& s : sites_) {
    for (std::size_t i = 0; i < n_; ++i) m[i] += s[i];
  }
  return m;
}

Configuration Configuration::truncated(std::size_t k) const {
  std::vector<LocalState> sites;
  sites.reserve(sites_.size());
  for (const auto& s : sites_) sites.push_back(s.truncated(k));
  return Configuration(k, std::move(sites));
}

std::size_t ConfigurationHash::operator()(const Configuration& c) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& s : c.sites()) {
    for (int v : s.mult()) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    h ^= 0x51ed27;
  }
  return h;
}

Sector::Sector(std::size_t length, std::vector<int> m) : length_(length), m_(std::move(m)) {
  if (m_.empty()) throw SectorError("sector needs at least one species");
  if (length_ < 2) throw SectorError("chain length L must be at least 2");
  for (std::size_t a = 0; a < m_.size(); ++a) {
    if (m_[a] < 1) {
      throw SectorError("sector is not basic: m_" + std::to_string(a + 1) + " = " + std::to_string(m_[a]) +
                        "; relabel species to obtain an equivalent basic sector with fewer species");
    }
  }
}

int Sector::ell(std::size_t a) const {
  return std::accumulate(m_.begin(), m_.begin() + static_cast<std::ptrdiff_t>(a), 0);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::uint64_t Sector::size() const {
  std::uint64_t r = 1;
  for (int ma : m_) r *= binomial(length_ + static_cast<std::uint64_t>(ma) - 1, static_cast<std::uint64_t>(ma));
  return r;
}

std::uint64_t Sector::multiline_size() const {
  std::uint64_t r = 1;
  for (std::size_t a = 1; a <= m_.size(); ++a) {
    const auto l = static_cast<std::uint64_t>(ell(a));
    r *= binomial(length_ - 1 + l, l);
  }
  return r;
}

Sector Sector::prefix(std::size_t k) const {
  if (k < 1 || k > m_.size()) throw SectorError("prefix species count out of range");
  return Sector(length_, std::vector<int>(m_.begin(), m_.begin() + static_cast<std::ptrdiff_t>(k)));
}

bool Sector::contains(const Configuration& c) const {
  return c.species_count() == m_.size() && c.length() == length_ && c.totals() == m_;
}

std::string Sector::to_string() const {
  std::string s = "S(";
  for (std::size_t a = 0; a < m_.size(); ++a) {
    if (a) s += ',';
    s += std::to_string(m_[a]);
  }
  return s + ") L=" + std::to_string(length_);
}

namespace {

// Local states with component-wise bound, lexicographic order.
void local_states_rec(std::span<const int> bounds, std::size_t i, LocalState& cur, std::vector<LocalState>& out) {
  if (i == bounds.size()) {
    out.push_back(cur);
    return;
  }
  for (int v = 0; v <= bounds[i]; ++v) {
    cur[i] = v;
    local_states_rec(bounds, i + 1, cur, out);
  }
  cur[i] = 0;
}

void sector_rec(std::size_t site, std::size_t length, std::vector<int>& remaining, std::vector<LocalState>& cur,
                std::size_t n, std::vector<Configuration>& out) {
  if (site + 1 == length) {
    cur[site] = LocalState(std::span<const int>(remaining));
    out.emplace_back(n, cur);
    return;
  }
  // Enumerate local states bounded by the remaining budget in lex order.
  std::vector<LocalState> choices;
  LocalState tmp(n);
  local_states_rec(remaining, 0, tmp, choices);
  for (const auto& choice : choices) {
    for (std::size_t a = 0; a < n; ++a) remaining[a] -= choice[a];
    cur[site] = choice;
    sector_rec(site + 1, length, remaining, cur, n, out);
    for (std::size_t a = 0; a < n; ++a) remaining[a] += choice[a];
  }
}

void composition_rec(std::size_t i, int remaining, std::vector<int>& cur,
                     const std::function<void(const std::vector<int>&)>& fn) {
  if (i + 1 == cur.size()) {
    cur[i] = remaining;
    fn(cur);
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    cur[i] = v;
    composition_rec(i + 1, remaining - v, cur, fn);
  }
}

}  // namespace

std::vector<LocalState> enumerate_local_states(std::span<const int> bounds) {
  std::vector<LocalState> out;
  LocalState cur(bounds.size());
  local_states_rec(bounds, 0, cur, out);
  return out;
}

std::vector<Configuration> enumerate_sector(const Sector& s) {
  const std::size_t n = s.species_count();
  std::vector<Configuration> out;
  out.reserve(s.size());
  std::vector<int> remaining = s.multiplicities();
  std::vector<LocalState> cur(s.length(), LocalState(n));
  sector_rec(0, s.length(), remaining, cur, n, out);
  return out;
}

SectorIndex::SectorIndex(const Sector& s) : sector_(s), configs_(enumerate_sector(s)) {
  lookup_.reserve(configs_.size());
  for (std::size_t i = 0; i < configs_.size(); ++i) lookup_.emplace(configs_[i], i);
}

std::size_t SectorIndex::index_of(const Configuration& c) const {
  auto it = lookup_.find(c);
  if (it == lookup_.end()) throw InputError("configuration " + format_configuration(c) + " is not in " + sector_.to_string());
  return it->second;
}

Configuration cyclic_shift(const Configuration& c) {
  std::vector<LocalState> sites = c.sites();
  if (!sites.empty()) std::rotate(sites.rbegin(), sites.rbegin() + 1, sites.rend());
  return Configuration(c.species_count(), std::move(sites));
}

void for_each_composition(std::size_t parts, int total, const std::function<void(const std::vector<int>&)>& fn) {
  if (parts == 0) return;
  std::vector<int> cur(parts, 0);
  composition_rec(0, total, cur, fn);
}

std::vector<MultilineState> enumerate_multiline(const Sector& s) {
  const std::size_t n = s.species_count();
  std::vector<std::vector<std::vector<int>>> rows(n);
  for (std::size_t a = 1; a <= n; ++a) {
    for_each_composition(s.length(), s.ell(a), [&](const std::vector<int>& x) { rows[a - 1].push_back(x); });
  }
  std::vector<MultilineState> out;
  out.reserve(s.multiline_size());
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    MultilineState x;
    x.rows.reserve(n);
    for (std::size_t a = 0; a < n; ++a) x.rows.push_back(rows[a][idx[a]]);
    out.push_back(std::move(x));
    // Odometer with x^n varying fastest so that the order is lexicographic on (x^1, ..., x^n).
    std::size_t a = n;
    while (a > 0) {
      --a;
      if (++idx[a] < rows[a].size()) break;
      idx[a] = 0;
      if (a == 0) return out;
    }
  }
}

std::string format_local_state(const LocalState& s) {
  if (s.species_count() > 9) {
    std::string out;
    for (std::size_t i = 0; i < s.species_count(); ++i) {
      if (i) out += ',';
      out += std::to_string(s[i]);
    }
    return out;
  }
  if (s.empty()) return "e";
  std::string out;
  for (int a : s.multiset()) out += static_cast<char>('0' + a);
  return out;
}

std::string format_multiset(const Configuration& c) {
  if (c.species_count() > 9) throw InputError("multiset text form needs n <= 9");
  std::string out;
  for (std::size_t i = 0; i < c.length(); ++i) {
    if (i) out += '|';
    out += format_local_state(c.site(i));
  }
  return out;
}

std::string format_multiplicity(const Configuration& c) {
  std::string out;
  for (std::size_t i = 0; i < c.length(); ++i) {
    if (i) out += ';';
    for (std::size_t a = 0; a < c.species_count(); ++a) {
      if (a) out += ',';
      out += std::to_string(c.site(i)[a]);
    }
  }
  return out;
}

std::string format_configuration(const Configuration& c) {
  return c.species_count() <= 9 ? format_multiset(c) : format_multiplicity(c);
}

namespace {

Configuration parse_multiplicity_form(std::string_view text, std::size_t n) {
  std::vector<LocalState> sites;
  std::size_t pos = 0;
  std::size_t site_start = 0;
  std::vector<int> cur;
  auto finish_site = [&](std::size_t at) {
    if (cur.size() != n) {
      throw ParseError("site has " + std::to_string(cur.size()) + " multiplicities, expected " + std::to_string(n),
                       site_start);
    }
    sites.emplace_back(std::span<const int>(cur));
    cur.clear();
    site_start = at + 1;
  };
  while (pos <= text.size()) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    const std::size_t num_start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (num_start == pos) throw ParseError("expected a nonnegative integer", num_start);
    if (pos - num_start > 6) throw ParseError("multiplicity too large", num_start);
    cur.push_back(std::stoi(std::string(text.substr(num_start, pos - num_start))));
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos == text.size()) {
      finish_site(pos);
      break;
    }
    if (text[pos] == ',') {
      ++pos;
    } else if (text[pos] == ';') {
      finish_site(pos);
      ++pos;
    } else {
      throw ParseError(std::string("unexpected character '") + text[pos] + "'", pos);
    }
  }
  return Configuration(n, std::move(sites));
}

Configuration parse_multiset_form(std::string_view text, std::size_t n) {
  if (n > 9) throw ParseError("multiset text form needs n <= 9; use the multiplicity form", 0);
  std::vector<LocalState> sites;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t start = pos;
    std::size_t end = text.find('|', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view tok = text.substr(start, end - start);
    if (tok.empty()) throw ParseError("empty site (use 'e' for an empty site)", start);
    LocalState s(n);
    if (tok == "e") {
      // empty site
    } else {
      int prev = 0;
      for (std::size_t k = 0; k < tok.size(); ++k) {
        const char ch = tok[k];
        if (!std::isdigit(static_cast<unsigned char>(ch))) {
          throw ParseError(std::string("unexpected character '") + ch + "' in site", start + k);
        }
        const int a = ch - '0';
        if (a < 1 || static_cast<std::size_t>(a) > n) {
          throw ParseError("species " + std::to_string(a) + " out of range 1.." + std::to_string(n), start + k);
        }
        if (a < prev) throw ParseError("species within a site must be sorted", start + k);
        prev = a;
        ++s.count(static_cast<std::size_t>(a));
      }
    }
    sites.push_back(std::move(s));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return Configuration(n, std::move(sites));
}

}  // namespace

Configuration parse_configuration(std::string_view text, std::size_t n) {
  if (n == 0) throw ParseError("species count must be positive", 0);
  if (text.empty()) throw ParseError("empty configuration", 0);
  if (text.find_first_of(",;") != std::string_view::npos || (n > 9)) return parse_multiplicity_form(text, n);
  return parse_multiset_form(text, n);
}

}  // namespace tazrp
