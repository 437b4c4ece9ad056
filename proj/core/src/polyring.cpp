#include "tazrp/polyring.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tazrp/errors.hpp"

namespace tazrp {

namespace {

void require_same_ambient(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw DimensionError(std::string(op) + ": ambient variable counts differ (" +
                         std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

// Canonical order is descending lexicographic.
bool precedes(const Monomial& a, const Monomial& b) { return a > b; }

void canonicalize(std::vector<Polynomial::Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& x, const auto& y) { return precedes(x.monomial, y.monomial); });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i + 1;
    Integer c = std::move(terms[i].coeff);
    while (j < terms.size() && terms[j].monomial == terms[i].monomial) {
      c += terms[j].coeff;
      ++j;
    }
    if (c != 0) {
      if (out != i) terms[out].monomial = std::move(terms[i].monomial);
      terms[out].coeff = std::move(c);
      ++out;
    }
    i = j;
  }
  terms.resize(out);
}

// Merges `rhs` (scaled by `sign`) into `lhs`; both canonical.
std::vector<Polynomial::Term> merge(const std::vector<Polynomial::Term>& lhs,
                                    const std::vector<Polynomial::Term>& rhs, int sign) {
  std::vector<Polynomial::Term> out;
  out.reserve(lhs.size() + rhs.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < lhs.size() || j < rhs.size()) {
    if (j == rhs.size() || (i < lhs.size() && precedes(lhs[i].monomial, rhs[j].monomial))) {
      out.push_back(lhs[i++]);
    } else if (i == lhs.size() || precedes(rhs[j].monomial, lhs[i].monomial)) {
      out.push_back({rhs[j].monomial, sign > 0 ? rhs[j].coeff : Integer(-rhs[j].coeff)});
      ++j;
    } else {
      Integer c = lhs[i].coeff;
      if (sign > 0) {
        c += rhs[j].coeff;
      } else {
        c -= rhs[j].coeff;
      }
      if (c != 0) out.push_back({lhs[i].monomial, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Monomial Monomial::variable(std::size_t n, std::size_t a) {
  if (a < 1 || a > n) {
    throw DimensionError("variable w" + std::to_string(a) + " outside ring of " +
                         std::to_string(n) + " variables");
  }
  Monomial m(n);
  m.exps_[a - 1] = 1;
  return m;
}

std::uint64_t Monomial::total_degree() const noexcept {
  std::uint64_t d = 0;
  for (auto e : exps_) d += e;
  return d;
}

bool Monomial::is_one() const noexcept {
  return std::all_of(exps_.begin(), exps_.end(), [](auto e) { return e == 0; });
}

Monomial& Monomial::operator*=(const Monomial& other) {
  require_same_ambient(size(), other.size(), "monomial product");
  for (std::size_t i = 0; i < exps_.size(); ++i) exps_[i] += other.exps_[i];
  return *this;
}

std::string Monomial::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += 'w' + std::to_string(i + 1);
    if (exps_[i] > 1) s += '^' + std::to_string(exps_[i]);
  }
  return s.empty() ? "1" : s;
}

Polynomial Polynomial::constant(std::size_t n, const Integer& c) {
  Polynomial p(n);
  if (c != 0) p.terms_.push_back({Monomial(n), c});
  return p;
}

Polynomial Polynomial::variable(std::size_t n, std::size_t a) {
  return monomial(Monomial::variable(n, a));
}

Polynomial Polynomial::monomial(const Monomial& m, const Integer& c) {
  Polynomial p(m.size());
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::from_terms(std::size_t n, std::vector<Term> terms) {
  for (const auto& t : terms) require_same_ambient(n, t.monomial.size(), "from_terms");
  Polynomial p(n);
  canonicalize(terms);
  p.terms_ = std::move(terms);
  return p;
}

bool Polynomial::has_nonnegative_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.coeff > 0; });
}

Integer Polynomial::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& x) {
    return precedes(t.monomial, x);
  });
  if (it != terms_.end() && it->monomial == m) return it->coeff;
  return 0;
}

Polynomial Polynomial::extended(std::size_t n) const {
  if (n < n_) throw DimensionError("cannot shrink a polynomial ring");
  Polynomial p(n);
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m(n);
    for (std::size_t i = 0; i < n_; ++i) m[i] = t.monomial[i];
    p.terms_.push_back({std::move(m), t.coeff});
  }
  // Appending zero exponents preserves the lexicographic order.
  return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_ambient(n_, other.n_, "add");
  if (other.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = other.terms_;
    return *this;
  }
  terms_ = merge(terms_, other.terms_, +1);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_ambient(n_, other.n_, "subtract");
  terms_ = merge(terms_, other.terms_, -1);
  return *this;
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
  require_same_ambient(lhs.n_, rhs.n_, "mul");
  Polynomial out(lhs.n_);
  if (lhs.terms_.empty() || rhs.terms_.empty()) return out;
  if (lhs.terms_.size() == 1 || rhs.terms_.size() == 1) {
    // Multiplying by a single term preserves the monomial order.
    const auto& single = lhs.terms_.size() == 1 ? lhs.terms_.front() : rhs.terms_.front();
    const auto& many = lhs.terms_.size() == 1 ? rhs.terms_ : lhs.terms_;
    out.terms_.reserve(many.size());
    for (const auto& t : many) out.terms_.push_back({t.monomial * single.monomial, t.coeff * single.coeff});
    return out;
  }
  std::vector<Polynomial::Term> terms;
  terms.reserve(lhs.terms_.size() * rhs.terms_.size());
  for (const auto& a : lhs.terms_) {
    for (const auto& b : rhs.terms_) terms.push_back({a.monomial * b.monomial, a.coeff * b.coeff});
  }
  canonicalize(terms);
  out.terms_ = std::move(terms);
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial& Polynomial::operator*=(const Integer& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

Polynomial& Polynomial::add_product(const Polynomial& a, const Polynomial& b) {
  require_same_ambient(n_, a.n_, "add_product");
  require_same_ambient(n_, b.n_, "add_product");
  if (a.terms_.empty() || b.terms_.empty()) return *this;
  return *this += a * b;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& t : terms_) {
    Integer c = t.coeff;
    if (c < 0) {
      s += '-';
      c = -c;
    } else if (!s.empty()) {
      s += '+';
    }
    const bool unit = t.monomial.is_one();
    if (unit) {
      s += c.str();
    } else {
      if (c != 1) s += c.str() + '*';
      s += t.monomial.to_string();
    }
  }
  return s;
}

Polynomial add(const Polynomial& p, const Polynomial& q) { return p + q; }
Polynomial mul(const Polynomial& p, const Polynomial& q) { return p * q; }

Polynomial exact_div_var(const Polynomial& p, std::size_t a) {
  if (a < 1 || a > p.ambient()) {
    throw DimensionError("exact_div_var: w" + std::to_string(a) + " outside ring of " +
                         std::to_string(p.ambient()) + " variables");
  }
  std::vector<Polynomial::Term> terms = p.terms();
  for (auto& t : terms) {
    if (t.monomial[a - 1] == 0) {
      throw NotDivisible("monomial " + t.monomial.to_string() + " of " + p.to_string() +
                         " is not divisible by w" + std::to_string(a));
    }
    --t.monomial[a - 1];
  }
  // Lowering one exponent uniformly keeps the order intact.
  return Polynomial::from_terms(p.ambient(), std::move(terms));
}

Rational eval(const Polynomial& p, std::span<const Rational> w) {
  require_same_ambient(p.ambient(), w.size(), "eval");
  Rational total = 0;
  for (const auto& t : p.terms()) {
    Rational v = Rational(t.coeff);
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (std::uint32_t e = 0; e < t.monomial[i]; ++e) v *= w[i];
    }
    total += v;
  }
  return total;
}

double eval(const Polynomial& p, std::span<const double> w) {
  require_same_ambient(p.ambient(), w.size(), "eval");
  double total = 0.0;
  for (const auto& t : p.terms()) {
    double v = t.coeff.convert_to<double>();
    for (std::size_t i = 0; i < w.size(); ++i) v *= std::pow(w[i], static_cast<double>(t.monomial[i]));
    total += v;
  }
  return total;
}

std::optional<std::uint64_t> homogeneous_degree(const Polynomial& p) {
  if (p.is_zero()) throw InputError("homogeneous_degree: degree of the zero polynomial is undefined");
  const std::uint64_t d = p.terms().front().monomial.total_degree();
  for (const auto& t : p.terms()) {
    if (t.monomial.total_degree() != d) return std::nullopt;
  }
  return d;
}

std::string rational_to_string(const Rational& q) {
  std::string s = boost::multiprecision::numerator(q).str();
  const Integer den = boost::multiprecision::denominator(q);
  if (den != 1) s += '/' + den.str();
  return s;
}

}  // namespace tazrp
