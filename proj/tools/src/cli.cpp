#include "tazrp/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "tazrp/errors.hpp"
#include "tazrp/fock.hpp"
#include "tazrp/gillespie.hpp"
#include "tazrp/markov.hpp"
#include "tazrp/mpf.hpp"
#include "tazrp/multiline.hpp"
#include "tazrp/serialize.hpp"
#include "tazrp/verify.hpp"

namespace tazrp {

namespace {

struct SectorArgs {
  int n = 0;
  int length = 0;
  std::string m;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  if (!text.empty() && text.back() == ',') out.emplace_back();
  return out;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& flag) {
  std::vector<int> out;
  for (const auto& item : split_list(text)) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw InputError(flag + ": '" + item + "' is not an integer");
    }
    if (used != item.size()) throw InputError(flag + ": '" + item + "' is not an integer");
    out.push_back(v);
  }
  if (out.empty()) throw InputError(flag + " must not be empty");
  return out;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& item : split_list(text)) out.push_back(parse_rational(item));
  return out;
}

Sector make_sector(const SectorArgs& a) {
  const auto m = parse_int_list(a.m, "--m");
  if (a.n != 0 && static_cast<std::size_t>(a.n) != m.size()) {
    throw InputError("--m has " + std::to_string(m.size()) + " entries but --n is " + std::to_string(a.n));
  }
  if (a.length <= 0) throw InputError("--L must be positive");
  return Sector(static_cast<std::size_t>(a.length), m);
}

void add_sector_flags(CLI::App* cmd, SectorArgs& a, bool require_n) {
  auto* n = cmd->add_option("--n", a.n, "number of species");
  if (require_n) n->required();
  cmd->add_option("--L", a.length, "chain length")->required();
  cmd->add_option("--m", a.m, "species multiplicities, comma separated")->required();
}

void emit(std::ostream& out, const Json& j) { out << j.dump() << '\n'; }

unsigned default_threads() {
  const char* env = std::getenv("TAZRP_THREADS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1) throw InputError("TAZRP_THREADS must be a positive integer");
  return static_cast<unsigned>(v);
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

std::size_t key_width(const Json& j) {
  std::size_t w = 0;
  for (const auto& [k, v] : j.items()) w = std::max(w, k.size());
  return w + 2;
}

int cmd_sector(const SectorArgs& a, bool pretty, std::ostream& out) {
  const Sector s = make_sector(a);
  Json configs = Json::array();
  for (const auto& c : enumerate_sector(s)) configs.push_back(format_configuration(c));
  if (pretty) {
    out << s.to_string() << " size=" << s.size() << " multiline=" << s.multiline_size()
        << '\n';
    for (const auto& c : configs) out << "  " << c.get<std::string>() << '\n';
    return kExitOk;
  }
  emit(out, {{"sector", s.to_string()},
             {"L", s.length()},
             {"size", s.size()},
             {"multiline_size", s.multiline_size()},
             {"configurations", std::move(configs)}});
  return kExitOk;
}

struct SteadyArgs {
  std::string method = "mpf";
  std::string w;
  bool terms = false;
  bool headroom = false;
};

int cmd_steady(const SectorArgs& a, const SteadyArgs& sa, unsigned threads, bool pretty, std::ostream& out) {
  const Sector s = make_sector(a);
  const Method method = parse_method(sa.method);
  if (method != Method::kernel && !sa.w.empty()) throw InputError("--w is only used with --method kernel");
  if (method == Method::kernel) {
    if (sa.w.empty()) throw InputError("--method kernel requires --w");
    const auto w = parse_rational_list(sa.w);
    if (w.size() != s.species_count()) throw InputError("--w must have one rate per species");
    for (const auto& x : w) {
      if (x <= 0) throw InputError("--w entries must be positive");
    }
    const auto sol = kernel_solve_numeric(s, w);
    MpfOptions mo;
    mo.threads = threads;
    const auto ss = steady_state_mpf(s, mo);
    Rational total = 0;
    for (const auto& [c, p] : ss.probs) total += eval(p, w);
    std::map<Configuration, Rational> scaled;
    for (const auto& [c, q] : sol.unit_sum) scaled.emplace(c, q * total);
    Json wj = Json::array();
    for (const auto& x : w) wj.push_back(rational_to_string(x));
    const Json unit = rational_map_json(sol.unit_sum);
    if (pretty) {
      const std::size_t width = key_width(unit);
      out << "unit-sum kernel at w = " << wj.dump() << '\n';
      for (const auto& [k, v] : unit.items()) out << "  " << pad(k, width) << v.get<std::string>() << '\n';
      out << "polynomial normalization total " << rational_to_string(total) << '\n';
      return kExitOk;
    }
    emit(out, {{"method", "kernel"},
               {"sector", s.to_string()},
               {"L", s.length()},
               {"w", std::move(wj)},
               {"unit_sum", unit},
               {"polynomial_normalization", {{"total", rational_to_string(total)}, {"values", rational_map_json(scaled)}}}});
    return kExitOk;
  }

  SteadyState ss;
  switch (method) {
    case Method::mpf: {
      MpfOptions mo;
      mo.threads = threads;
      mo.headroom_check = sa.headroom;
      ss = steady_state_mpf(s, mo);
      break;
    }
    case Method::multiline:
      ss = steady_state_multiline(s);
      break;
    case Method::full_trace:
      ss = steady_state_full_trace(s);
      break;
    case Method::kernel:
      break;
  }
  if (pretty) {
    const Json text = steady_state_json(ss);
    const std::size_t width = key_width(text);
    for (const auto& [k, v] : text.items()) out << pad(k, width) << v.get<std::string>() << '\n';
    return kExitOk;
  }
  const Json j = steady_state_json(ss, sa.terms);
  emit(out, j);
  return kExitOk;
}

struct VerifyArgs {
  bool deep = false;
  std::string golden;
};

int cmd_verify(const SectorArgs& a, const VerifyArgs& va, unsigned threads, bool pretty, std::ostream& out) {
  const Sector s = make_sector(a);
  VerifyOptions opts;
  opts.deep = va.deep;
  opts.threads = threads;
  if (!va.golden.empty()) {
    std::ifstream in(va.golden);
    if (!in) throw InputError("cannot open golden file " + va.golden);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(std::string("golden file is not valid JSON: ") + e.what());
    }
    opts.golden = steady_state_from_json(j, s);
  }
  const auto report = verify_sector(s, opts);
  if (pretty) {
    out << s.to_string() << '\n';
    for (const auto& c : report.checks) {
      out << "  " << (c.ok ? "PASS " : "FAIL ") << c.name;
      if (!c.ok) out << "  " << c.detail.dump();
      out << '\n';
    }
  } else {
    emit(out, report.to_json());
  }
  return report.ok() ? kExitOk : kExitVerification;
}

int cmd_hat(int n, int bound, unsigned threads, bool pretty, std::ostream& out) {
  if (n < 2) throw InputError("--n must be at least 2");
  if (bound < 1) throw InputError("--bound must be at least 1");
  const auto r = check_hat_relation(static_cast<std::size_t>(n), bound, threads);
  Json j = {{"n", n},
            {"bound", bound},
            {"ok", r.ok},
            {"tuples", r.tuples},
            {"columns", r.columns},
            {"trivial", r.trivial},
            {"nontrivial", r.nontrivial},
            {"failures", r.failures}};
  if (r.witness) {
    j["witness"] = {{"alpha", format_local_state(r.witness->alpha)},
                    {"beta", format_local_state(r.witness->beta)},
                    {"mu", format_local_state(r.witness->mu)},
                    {"nu", format_local_state(r.witness->nu)},
                    {"input", r.witness_input},
                    {"residual", r.witness_detail}};
  }
  if (pretty) {
    for (const auto& [k, v] : j.items()) out << pad(k, 12) << v.dump() << '\n';
  } else {
    emit(out, j);
  }
  return r.ok ? kExitOk : kExitVerification;
}

struct SimArgs {
  std::string w;
  std::uint64_t events = 1010000;
  std::uint64_t burn_in = 10000;
  std::uint64_t seed = 42;
  unsigned replicas = 1;
  bool exact = false;
};

int cmd_simulate(const SectorArgs& a, const SimArgs& sa, unsigned threads, bool pretty, std::ostream& out) {
  const Sector s = make_sector(a);
  const auto wq = parse_rational_list(sa.w);
  if (wq.size() != s.species_count()) throw InputError("--w must have one rate per species");
  SimConfig cfg;
  cfg.sector = s;
  for (const auto& x : wq) cfg.w.push_back(x.convert_to<double>());
  cfg.seed = sa.seed;
  cfg.events = sa.events;
  cfg.burn_in = sa.burn_in;
  const auto dist = sa.replicas == 1 ? run(cfg) : run_replicas(cfg, sa.replicas, threads);
  const auto frac = dist.fractions();
  Json fj = Json::object();
  for (const auto& c : enumerate_sector(s)) {
    auto it = frac.find(c);
    fj[format_configuration(c)] = it == frac.end() ? 0.0 : it->second;
  }
  Json summary = {{"events", dist.events}, {"total_time", dist.total_time}, {"seed", sa.seed}, {"replicas", sa.replicas}};
  if (sa.exact) summary["tv_distance"] = tv_distance(frac, kernel_solve_numeric(s, wq).unit_sum);
  if (pretty) {
    const std::size_t width = key_width(fj);
    for (const auto& [k, v] : fj.items()) {
      std::ostringstream os;
      os << std::fixed << std::setprecision(6) << v.get<double>();
      out << pad(k, width) << os.str() << '\n';
    }
    for (const auto& [k, v] : summary.items()) out << pad(k, width) << v.dump() << '\n';
    return kExitOk;
  }
  emit(out, {{"fractions", std::move(fj)}, {"summary", std::move(summary)}});
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Steady states of the multispecies inhomogeneous zero range process on a ring"};
  app.name("tazrp");
  app.require_subcommand(1);
  app.fallthrough();

  bool pretty = false;
  unsigned threads = 0;
  app.add_flag("--pretty", pretty, "human-readable tables instead of JSON");
  app.add_option("--threads", threads, "worker threads (default: TAZRP_THREADS or 1)");

  SectorArgs sector_args;
  auto* sector = app.add_subcommand("sector", "enumerate the configurations of a sector");
  add_sector_flags(sector, sector_args, false);

  SectorArgs steady_sector;
  SteadyArgs steady_args;
  auto* steady = app.add_subcommand("steady", "compute the steady state");
  add_sector_flags(steady, steady_sector, false);
  steady->add_option("--method", steady_args.method, "mpf | multiline | kernel | full-trace");
  steady->add_option("--w", steady_args.w, "rates for --method kernel, comma separated rationals");
  steady->add_flag("--terms", steady_args.terms, "structured polynomial terms instead of strings");
  steady->add_flag("--headroom", steady_args.headroom, "recheck every trace with Fock caps raised by one");

  SectorArgs verify_sector_args;
  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "run the consistency checks on a sector");
  add_sector_flags(verify, verify_sector_args, false);
  verify->add_flag("--deep", verify_args.deep, "also compare with the exact kernel at w = (1, ..., n)");
  verify->add_option("--golden", verify_args.golden, "JSON file of reference probabilities");

  int hat_n = 0;
  int hat_bound = 1;
  auto* hat = app.add_subcommand("hat-check", "check the hat relation on bounded local states");
  hat->add_option("--n", hat_n, "number of species")->required();
  hat->add_option("--bound", hat_bound, "occupation bound");

  SectorArgs sim_sector;
  SimArgs sim_args;
  auto* sim = app.add_subcommand("simulate", "continuous-time Monte Carlo estimate of the steady state");
  add_sector_flags(sim, sim_sector, false);
  sim->add_option("--w", sim_args.w, "rates, comma separated")->required();
  sim->add_option("--events", sim_args.events, "total events, burn-in included");
  sim->add_option("--burn-in", sim_args.burn_in, "events discarded before averaging");
  sim->add_option("--seed", sim_args.seed, "random seed");
  sim->add_option("--replicas", sim_args.replicas, "independent replicas to merge");
  sim->add_flag("--exact", sim_args.exact, "report the total variation distance to the exact distribution");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (threads == 0) threads = default_threads();
    if (sector->parsed()) return cmd_sector(sector_args, pretty, out);
    if (steady->parsed()) return cmd_steady(steady_sector, steady_args, threads, pretty, out);
    if (verify->parsed()) return cmd_verify(verify_sector_args, verify_args, threads, pretty, out);
    if (hat->parsed()) return cmd_hat(hat_n, hat_bound, threads, pretty, out);
    if (sim->parsed()) return cmd_simulate(sim_sector, sim_args, threads, pretty, out);
  } catch (const InternalError& e) {
    err << "tazrp: internal consistency failure: " << e.what() << '\n';
    return kExitVerification;
  } catch (const SolverError& e) {
    err << "tazrp: " << e.what() << '\n';
    return kExitVerification;
  } catch (const Error& e) {
    err << "tazrp: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace tazrp
