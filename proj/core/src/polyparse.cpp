#include <cctype>

#include "tazrp/errors.hpp"
#include "tazrp/polyring.hpp"

namespace tazrp {

namespace {

// cpp_int reads a leading 0 as an octal prefix.
Integer decimal(std::string_view digits) {
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  return Integer(std::string(digits));
}

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t n) : text_(text), n_(n) {}

  Polynomial parse() {
    skip_ws();
    if (at_end()) throw ParseError("empty polynomial", pos_);
    Polynomial p = expr();
    skip_ws();
    if (!at_end()) throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
    return p;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Polynomial expr() {
    skip_ws();
    int sign = 1;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1 : 1;
      ++pos_;
    }
    Polynomial acc = term();
    if (sign < 0) acc = -acc;
    for (;;) {
      skip_ws();
      const char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      Polynomial t = term();
      if (c == '+') {
        acc += t;
      } else {
        acc -= t;
      }
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    for (;;) {
      skip_ws();
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * factor();
      } else if (c == '(' || c == 'w' || std::isdigit(static_cast<unsigned char>(c))) {
        acc = acc * factor();  // implicit product, e.g. "2w1" or "(..)(..)"
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial base = primary();
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      const std::size_t at = pos_;
      const Integer e = integer();
      if (e > 1000) throw ParseError("exponent too large", at);
      Polynomial r = Polynomial::constant(n_, 1);
      for (int i = 0; i < e.convert_to<int>(); ++i) r = r * base;
      return r;
    }
    return base;
  }

  Polynomial primary() {
    skip_ws();
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      skip_ws();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (c == 'w') {
      const std::size_t at = pos_;
      ++pos_;
      const Integer idx = integer();
      if (idx < 1 || idx > n_) {
        throw ParseError("variable index out of range 1.." + std::to_string(n_), at);
      }
      return Polynomial::variable(n_, idx.convert_to<std::size_t>());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Polynomial::constant(n_, integer());
    if (at_end()) throw ParseError("unexpected end of input", pos_);
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  Integer integer() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected an integer", start);
    return decimal(text_.substr(start, pos_ - start));
  }

  std::string_view text_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer pow10(unsigned e) {
  Integer r = 1;
  for (unsigned i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::size_t n) { return PolyParser(text, n).parse(); }

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw ParseError("empty number", 0);
  bool negative = false;
  std::size_t offset = 0;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
    offset = 1;
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    const auto num = s.substr(0, slash);
    const auto den = s.substr(slash + 1);
    if (!all_digits(num)) throw ParseError("bad numerator", offset);
    if (!all_digits(den)) throw ParseError("bad denominator", offset + slash + 1);
    const Integer d = decimal(den);
    if (d == 0) throw ParseError("zero denominator", offset + slash + 1);
    value = Rational(decimal(num), d);
  } else {
    int exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      auto exp_text = s.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!all_digits(exp_text) || exp_text.size() > 4) throw ParseError("bad exponent", offset + e + 1);
      exponent = std::stoi(std::string{exp_text}) * (exp_negative ? -1 : 1);
      s = s.substr(0, e);
    }
    std::string digits;
    int frac_digits = 0;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      const auto ip = s.substr(0, dot);
      const auto fp = s.substr(dot + 1);
      if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty())) {
        throw ParseError("bad decimal number", offset);
      }
      digits = std::string{ip} + std::string{fp};
      frac_digits = static_cast<int>(fp.size());
    } else {
      if (!all_digits(s)) throw ParseError("bad number", offset);
      digits = std::string{s};
    }
    const int scale = exponent - frac_digits;
    const Integer mant = decimal(digits);
    value = scale >= 0 ? Rational(mant * pow10(static_cast<unsigned>(scale)))
                       : Rational(mant, pow10(static_cast<unsigned>(-scale)));
  }
  return negative ? Rational(-value) : value;
}

}  // namespace tazrp
