#pragma once

// Exact sparse multivariate polynomials in the rate variables w1..wn.
//
// A Polynomial carries its ambient variable count n. Operands with different
// n never mix: binary operations throw DimensionError. Terms are kept in
// canonical order (descending lexicographic on exponent vectors, so w1 sorts
// before w2) with no zero coefficients stored.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace tazrp {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class Monomial {
 public:
  using Exponents = boost::container::small_vector<std::uint32_t, 8>;

  Monomial() = default;
  /// The constant monomial 1 in n variables.
  explicit Monomial(std::size_t n) : exps_(n, 0) {}
  Monomial(std::initializer_list<std::uint32_t> exps) : exps_(exps) {}
  explicit Monomial(std::span<const std::uint32_t> exps) : exps_(exps.begin(), exps.end()) {}

  /// w_a in n variables; `a` is the 1-based species index.
  static Monomial variable(std::size_t n, std::size_t a);

  std::size_t size() const noexcept { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::uint32_t& operator[](std::size_t i) { return exps_[i]; }
  std::span<const std::uint32_t> exps() const noexcept { return {exps_.data(), exps_.size()}; }
  std::uint64_t total_degree() const noexcept;
  bool is_one() const noexcept;

  Monomial& operator*=(const Monomial& other);
  friend Monomial operator*(Monomial lhs, const Monomial& rhs) { return lhs *= rhs; }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend std::strong_ordering operator<=>(const Monomial& lhs, const Monomial& rhs) {
    return std::lexicographical_compare_three_way(lhs.exps_.begin(), lhs.exps_.end(),
                                                  rhs.exps_.begin(), rhs.exps_.end());
  }

  /// "w1^2*w3", or "1" for the constant monomial.
  std::string to_string() const;

 private:
  Exponents exps_;
};

class Polynomial {
 public:
  struct Term {
    Monomial monomial;
    Integer coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  /// The zero polynomial in n variables.
  explicit Polynomial(std::size_t n = 0) : n_(n) {}

  static Polynomial constant(std::size_t n, const Integer& c);
  static Polynomial variable(std::size_t n, std::size_t a);
  static Polynomial monomial(const Monomial& m, const Integer& c = 1);
  /// Builds a polynomial from arbitrary terms; sorts, merges, drops zeros.
  static Polynomial from_terms(std::size_t n, std::vector<Term> terms);

  std::size_t ambient() const noexcept { return n_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool has_nonnegative_coefficients() const;

  /// Coefficient of `m` (zero when absent).
  Integer coefficient(const Monomial& m) const;

  /// Same polynomial viewed in a ring with `n` >= ambient() variables.
  Polynomial extended(std::size_t n) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Integer& c);
  /// this += a * b without materializing the product's canonical form twice.
  Polynomial& add_product(const Polynomial& a, const Polynomial& b);

  friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
  friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
  friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);
  friend Polynomial operator*(Polynomial lhs, const Integer& c) { return lhs *= c; }
  friend Polynomial operator*(const Integer& c, Polynomial rhs) { return rhs *= c; }
  Polynomial operator-() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Canonical human-readable form, e.g. "w1^2+2*w1*w2+w2^2"; "0" for zero.
  std::string to_string() const;

 private:
  std::size_t n_ = 0;
  std::vector<Term> terms_;
};

Polynomial add(const Polynomial& p, const Polynomial& q);
Polynomial mul(const Polynomial& p, const Polynomial& q);

/// p / w_a for 1-based `a`. Throws NotDivisible if some monomial lacks w_a.
Polynomial exact_div_var(const Polynomial& p, std::size_t a);

/// Substitutes w exactly. Throws DimensionError if w.size() != ambient().
Rational eval(const Polynomial& p, std::span<const Rational> w);
double eval(const Polynomial& p, std::span<const double> w);

/// Common total degree, or nullopt when the polynomial is not homogeneous.
/// Throws InputError for the zero polynomial.
std::optional<std::uint64_t> homogeneous_degree(const Polynomial& p);

/// Parses expressions such as "(w1+w2)*(w1^2+w2^2) - 3*w2". Accepts integer
/// literals, variables w1..wn, + - * ^ and parentheses. Throws ParseError.
Polynomial parse_polynomial(std::string_view text, std::size_t n);

/// Exact decimal/fraction parsing: "3", "-1/2", "0.125", "1e-3".
Rational parse_rational(std::string_view text);
std::string rational_to_string(const Rational& q);

}  // namespace tazrp
