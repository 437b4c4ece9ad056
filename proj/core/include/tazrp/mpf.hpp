#pragma once

// Matrix product steady state, computed level by level: the probabilities of
// the n-species chain are traces of A^{(n)} products weighted by the
// (n-1)-species probabilities.

#include <map>
#include <string>

#include "tazrp/fock.hpp"
#include "tazrp/polyring.hpp"
#include "tazrp/states.hpp"

namespace tazrp {

enum class Method { mpf, multiline, kernel, full_trace };

std::string to_string(Method m);
/// Throws InputError for unknown names.
Method parse_method(std::string_view name);

struct SteadyState {
  Sector sector;
  std::map<Configuration, Polynomial> probs;
  Method method = Method::mpf;

  const Polynomial& at(const Configuration& c) const;
};

struct MpfOptions {
  unsigned threads = 1;
  /// Recompute every trace with all Fock caps raised by one and require
  /// identical results.
  bool headroom_check = false;
};

SteadyState steady_state_mpf(const Sector& s, const MpfOptions& opts = {});

/// w_n * P(sigma) before the final division, for a single configuration:
/// sum over mu in S(m_1..m_{n-1}) of Pbar(mu) Tr(A_{mu_1,sigma_1} ... A_{mu_L,sigma_L}).
/// `lower` is the steady state of the (n-1)-species prefix sector.
Polynomial mpf_numerator(const SteadyState& lower, const Configuration& sigma);

/// w_n^{-1} Tr(A_{mu_1,sigma_1} ... A_{mu_L,sigma_L}) on the Fock space with caps
/// m_1..m_{n-1} of sigma's sector. Throws NotDivisible if the trace is not
/// divisible by w_n.
Polynomial reduced_trace(const Configuration& mu, const Configuration& sigma);

/// (w_2 ... w_n)^{-1} Tr(X_{sigma_1} ... X_{sigma_L}) with the full operators X
/// on n(n-1)/2 modes. Only offered for n <= 3.
SteadyState steady_state_full_trace(const Sector& s);

struct NormalizationReport {
  bool ok = false;
  Integer total;
  Integer expected;
};

/// Sum of P(sigma) at w = (1, ..., 1) against #B(m).
NormalizationReport normalization_check(const SteadyState& ss);

}  // namespace tazrp
