#pragma once

// JSON forms of polynomials, steady states, generators and diagrams. Maps are
// emitted in canonical configuration order so output is byte-stable.

#include <map>

#include <nlohmann/json.hpp>

#include "tazrp/markov.hpp"
#include "tazrp/mpf.hpp"
#include "tazrp/multiline.hpp"

namespace tazrp {

using Json = nlohmann::ordered_json;

/// [{"exps":[e1,...,en],"coeff":"c"}, ...] in canonical term order.
Json polynomial_terms_json(const Polynomial& p);
Polynomial polynomial_from_terms_json(const Json& j, std::size_t n);

/// {"config-text": "polynomial", ...}; with `terms` the values use
/// polynomial_terms_json instead of strings.
Json steady_state_json(const SteadyState& ss, bool terms = false);

/// Reads {"config-text": "polynomial" | terms, ...}. Throws InputError or
/// ParseError on malformed input; configurations must lie in `s`.
std::map<Configuration, Polynomial> steady_state_from_json(const Json& j, const Sector& s);

/// {"config-text": "p/q", ...}.
Json rational_map_json(const std::map<Configuration, Rational>& m);

/// [{"row":i,"col":j,"poly":"..."}, ...] plus the basis.
Json generator_json(const GeneratorMatrix& h);

Json pairing_json(const PairingResult& r);

Json operator_json(const FockOperator& op);

}  // namespace tazrp
