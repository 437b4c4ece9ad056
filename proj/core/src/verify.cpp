#include "tazrp/verify.hpp"

#include "tazrp/errors.hpp"
#include "tazrp/markov.hpp"
#include "tazrp/multiline.hpp"

namespace tazrp {

bool VerifyReport::ok() const {
  for (const auto& c : checks) {
    if (!c.ok) return false;
  }
  return true;
}

Json VerifyReport::to_json() const {
  Json list = Json::array();
  for (const auto& c : checks) list.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  return {{"sector", sector.to_string()}, {"L", sector.length()}, {"ok", ok()}, {"checks", std::move(list)}};
}

CheckResult check_generator_columns(const GeneratorMatrix& h) {
  CheckResult r{"column-sums", true, Json::object()};
  for (std::size_t col = 0; col < h.dim(); ++col) {
    Polynomial s = h.column_sum(col);
    if (!s.is_zero()) {
      r.ok = false;
      r.detail = {{"column", format_configuration(h.index()[col])}, {"sum", s.to_string()}};
      return r;
    }
  }
  r.detail = {{"dim", h.dim()}, {"nonzeros", h.nonzeros()}};
  return r;
}

CheckResult check_stationary(const std::string& name, const GeneratorMatrix& h,
                             const std::map<Configuration, Polynomial>& p) {
  CheckResult r{name, true, Json::object()};
  const auto sc = check_steady(h, p);
  r.ok = sc.ok;
  if (!sc.ok) r.detail = {{"row", format_configuration(*sc.row)}, {"residual", sc.residual.to_string()}};
  return r;
}

CheckResult check_degree(const SteadyState& ss) {
  const std::uint64_t expected = (ss.sector.species_count() - 1) * (ss.sector.length() - 1);
  CheckResult r{"degree", true, {{"expected", expected}}};
  for (const auto& [c, p] : ss.probs) {
    std::optional<std::uint64_t> d;
    if (!p.is_zero()) d = homogeneous_degree(p);
    if (!d || *d != expected) {
      r.ok = false;
      r.detail = {{"expected", expected}, {"configuration", format_configuration(c)}, {"value", p.to_string()}};
      return r;
    }
  }
  return r;
}

CheckResult check_nonnegative(const SteadyState& ss) {
  CheckResult r{"nonnegative", true, Json::object()};
  for (const auto& [c, p] : ss.probs) {
    if (p.is_zero() || !p.has_nonnegative_coefficients()) {
      r.ok = false;
      r.detail = {{"configuration", format_configuration(c)}, {"value", p.to_string()}};
      return r;
    }
  }
  return r;
}

CheckResult check_normalization(const SteadyState& ss) {
  const auto n = normalization_check(ss);
  return {"normalization", n.ok, {{"total", n.total.str()}, {"expected", n.expected.str()}}};
}

CheckResult check_cyclic(const SteadyState& ss) {
  CheckResult r{"cyclic", true, Json::object()};
  for (const auto& [c, p] : ss.probs) {
    const Configuration shifted = cyclic_shift(c);
    const auto it = ss.probs.find(shifted);
    if (it == ss.probs.end() || it->second != p) {
      r.ok = false;
      r.detail = {{"configuration", format_configuration(c)}, {"shifted", format_configuration(shifted)}};
      return r;
    }
  }
  return r;
}

CheckResult check_agreement(const std::string& name, const std::map<Configuration, Polynomial>& a,
                            const std::map<Configuration, Polynomial>& b, bool subset) {
  CheckResult r{name, true, Json::object()};
  for (const auto& [c, p] : a) {
    auto it = b.find(c);
    if (it == b.end() || it->second != p) {
      r.ok = false;
      r.detail = {{"configuration", format_configuration(c)},
                  {"left", p.to_string()},
                  {"right", it == b.end() ? std::string("missing") : it->second.to_string()}};
      return r;
    }
  }
  if (!subset && a.size() != b.size()) {
    r.ok = false;
    r.detail = {{"left_size", a.size()}, {"right_size", b.size()}};
  }
  return r;
}

CheckResult check_kernel(const GeneratorMatrix& h, const SteadyState& ss, const std::vector<Rational>& w) {
  CheckResult r{"kernel", true, Json::object()};
  Json wj = Json::array();
  for (const auto& x : w) wj.push_back(rational_to_string(x));
  r.detail["w"] = wj;
  const std::size_t dim = kernel_dimension(h, w);
  r.detail["kernel_dimension"] = dim;
  if (dim != 1) {
    r.ok = false;
    return r;
  }
  const auto sol = kernel_solve_numeric(h, w);
  Rational total = 0;
  std::map<Configuration, Rational> values;
  for (const auto& [c, p] : ss.probs) total += values[c] = eval(p, w);
  for (const auto& [c, q] : sol.unit_sum) {
    if (values.at(c) / total != q) {
      r.ok = false;
      r.detail["configuration"] = format_configuration(c);
      r.detail["kernel"] = rational_to_string(q);
      r.detail["polynomial"] = rational_to_string(values.at(c) / total);
      return r;
    }
  }
  return r;
}

VerifyReport verify_sector(const Sector& s, const VerifyOptions& opts) {
  VerifyReport rep{s, {}};
  const auto h = build_generator(s);
  rep.checks.push_back(check_generator_columns(h));
  MpfOptions mo;
  mo.threads = opts.threads;
  const SteadyState mpf = steady_state_mpf(s, mo);
  const SteadyState ml = steady_state_multiline(s);
  rep.checks.push_back(check_stationary("stationary-mpf", h, mpf.probs));
  rep.checks.push_back(check_stationary("stationary-multiline", h, ml.probs));
  rep.checks.push_back(check_degree(mpf));
  rep.checks.push_back(check_nonnegative(mpf));
  rep.checks.push_back(check_normalization(mpf));
  rep.checks.push_back(check_cyclic(mpf));
  rep.checks.push_back(check_agreement("mpf-vs-multiline", mpf.probs, ml.probs));
  if (opts.golden) {
    std::map<Configuration, Polynomial> golden;
    bool complete = true;
    for (const auto& c : h.index().configurations()) {
      auto it = opts.golden->find(c);
      if (it == opts.golden->end()) {
        complete = false;
        break;
      }
      golden.emplace(c, it->second);
    }
    if (complete) {
      rep.checks.push_back(check_stationary("stationary-golden", h, golden));
    } else {
      rep.checks.push_back({"stationary-golden", false, {{"error", "golden file does not cover the sector"}}});
    }
    rep.checks.push_back(check_agreement("golden-vs-mpf", *opts.golden, mpf.probs, true));
  }
  if (opts.deep) {
    std::vector<Rational> w;
    for (std::size_t a = 1; a <= s.species_count(); ++a) w.emplace_back(static_cast<long>(a));
    rep.checks.push_back(check_kernel(h, mpf, w));
  }
  return rep;
}

}  // namespace tazrp
