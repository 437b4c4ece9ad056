#include "tazrp/serialize.hpp"

#include "tazrp/errors.hpp"

namespace tazrp {

Json polynomial_terms_json(const Polynomial& p) {
  Json out = Json::array();
  for (const auto& t : p.terms()) {
    Json exps = Json::array();
    for (auto e : t.monomial.exps()) exps.push_back(e);
    out.push_back({{"exps", std::move(exps)}, {"coeff", t.coeff.str()}});
  }
  return out;
}

Polynomial polynomial_from_terms_json(const Json& j, std::size_t n) {
  if (!j.is_array()) throw InputError("polynomial terms must be a JSON array");
  std::vector<Polynomial::Term> terms;
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("exps") || !t.contains("coeff")) throw InputError("malformed polynomial term");
    const auto& e = t.at("exps");
    if (!e.is_array() || e.size() != n) throw InputError("term exponent vector has the wrong length");
    Monomial m(n);
    for (std::size_t a = 0; a < n; ++a) {
      if (!e[a].is_number_unsigned()) throw InputError("exponents must be nonnegative integers");
      m[a] = e[a].get<std::uint32_t>();
    }
    const auto& c = t.at("coeff");
    Integer coeff;
    if (c.is_string()) {
      const Rational q = parse_rational(c.get<std::string>());
      if (boost::multiprecision::denominator(q) != 1) throw InputError("polynomial coefficients must be integers");
      coeff = boost::multiprecision::numerator(q);
    } else if (c.is_number_integer()) {
      coeff = c.get<std::int64_t>();
    } else {
      throw InputError("coefficient must be an integer or a string");
    }
    terms.push_back({m, coeff});
  }
  return Polynomial::from_terms(n, std::move(terms));
}

Json steady_state_json(const SteadyState& ss, bool terms) {
  Json out = Json::object();
  for (const auto& [c, p] : ss.probs) {
    if (terms) {
      out[format_configuration(c)] = polynomial_terms_json(p);
    } else {
      out[format_configuration(c)] = p.to_string();
    }
  }
  return out;
}

std::map<Configuration, Polynomial> steady_state_from_json(const Json& j, const Sector& s) {
  if (!j.is_object()) throw InputError("steady state must be a JSON object");
  const std::size_t n = s.species_count();
  std::map<Configuration, Polynomial> out;
  for (const auto& [key, value] : j.items()) {
    Configuration c = parse_configuration(key, n);
    if (!s.contains(c)) throw InputError("configuration " + key + " is not in " + s.to_string());
    Polynomial p = value.is_string() ? parse_polynomial(value.get<std::string>(), n) : polynomial_from_terms_json(value, n);
    if (!out.emplace(std::move(c), std::move(p)).second) throw InputError("duplicate configuration " + key);
  }
  return out;
}

Json rational_map_json(const std::map<Configuration, Rational>& m) {
  Json out = Json::object();
  for (const auto& [c, q] : m) out[format_configuration(c)] = rational_to_string(q);
  return out;
}

Json generator_json(const GeneratorMatrix& h) {
  Json basis = Json::array();
  for (const auto& c : h.index().configurations()) basis.push_back(format_configuration(c));
  Json entries = Json::array();
  for (std::size_t col = 0; col < h.dim(); ++col) {
    for (const auto& e : h.column(col)) entries.push_back({{"row", e.row}, {"col", col}, {"poly", e.value.to_string()}});
  }
  return {{"sector", h.sector().to_string()}, {"basis", std::move(basis)}, {"entries", std::move(entries)}};
}

Json pairing_json(const PairingResult& r) {
  const auto& d = r.diagram;
  Json lines = Json::array();
  for (const auto& h : d.hlines) {
    lines.push_back({{"color", h.color},
                     {"start", h.start_site},
                     {"partner", {h.partner.site, h.partner.ordinal}},
                     {"borders", h.borders}});
  }
  Json eta = Json::array();
  for (auto s : r.eta) eta.push_back("w" + std::to_string(s));
  return {{"level", d.level},
          {"top", format_configuration(d.top)},
          {"bottom", d.bottom},
          {"hlines", std::move(lines)},
          {"dot_colors", d.dot_colors},
          {"eta", std::move(eta)},
          {"phi", format_configuration(r.phi)},
          {"varpi", r.weight.to_string()}};
}

Json operator_json(const FockOperator& op) {
  Json entries = Json::array();
  for (std::size_t in = 0; in < op.space().dim(); ++in) {
    for (const auto& e : op.column(in)) {
      entries.push_back({{"out", op.space().occupation(e.out)},
                         {"in", op.space().occupation(in)},
                         {"value", e.value.to_string()}});
    }
  }
  return {{"caps", op.space().caps()}, {"entries", std::move(entries)}};
}

}  // namespace tazrp
