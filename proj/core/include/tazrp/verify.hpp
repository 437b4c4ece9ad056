#pragma once

// Consistency checks of computed steady states, bundled for the command-line
// tool and the acceptance suite.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tazrp/mpf.hpp"
#include "tazrp/serialize.hpp"

namespace tazrp {

struct CheckResult {
  std::string name;
  bool ok = false;
  /// Failure witness or summary data.
  Json detail = Json::object();
};

struct VerifyOptions {
  /// Adds exact kernel agreement at w = (1, 2, ..., n).
  bool deep = false;
  /// Reference probabilities to check as well.
  std::optional<std::map<Configuration, Polynomial>> golden;
  unsigned threads = 1;
};

struct VerifyReport {
  Sector sector;
  std::vector<CheckResult> checks;
  bool ok() const;
  Json to_json() const;
};

CheckResult check_generator_columns(const GeneratorMatrix& h);
CheckResult check_stationary(const std::string& name, const GeneratorMatrix& h,
                             const std::map<Configuration, Polynomial>& p);
/// Every value homogeneous of degree (n-1)(L-1).
CheckResult check_degree(const SteadyState& ss);
CheckResult check_nonnegative(const SteadyState& ss);
CheckResult check_normalization(const SteadyState& ss);
CheckResult check_cyclic(const SteadyState& ss);
/// Every entry of `a` matches `b`; unless `subset`, the key sets must agree.
CheckResult check_agreement(const std::string& name, const std::map<Configuration, Polynomial>& a,
                            const std::map<Configuration, Polynomial>& b, bool subset = false);
/// Kernel of H(w) is one-dimensional and equals P(w) up to normalization.
CheckResult check_kernel(const GeneratorMatrix& h, const SteadyState& ss, const std::vector<Rational>& w);

VerifyReport verify_sector(const Sector& s, const VerifyOptions& opts = {});

}  // namespace tazrp
