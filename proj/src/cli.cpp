#include "liesur/cli.hpp"

#include "liesur/algebras.hpp"
#include "liesur/entangle.hpp"
#include "liesur/optimize.hpp"
#include "liesur/sur.hpp"
#include "liesur/weights.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace liesur::cli {

namespace {

using Json = nlohmann::ordered_json;

class BadInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string command;
  std::string algebra;
  std::string j;
  std::string kappa;
  int cutoff = 0;
  std::string irrep;
  int trials = 100;
  std::int64_t shots = 10000;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string output;

  // minimize
  int restarts = 8;
  long max_iters = 20000;
  double tol = tol::kOptimizer;
  // witness / identities / table
  int n = 0;
  int particles = 0;
  std::string state = "saturating";
  int max_label = 3;
  // sample
  std::string observable;
  bool emit_samples = false;
};

AlgebraSpec resolve_algebra(const RunConfig& cfg) {
  if (cfg.algebra.empty()) throw BadInput("--algebra is required");
  AlgebraSpec spec = AlgebraSpec::parse(cfg.algebra);
  if (!cfg.j.empty()) {
    if (spec.kind != AlgebraKind::SU2) throw BadInput("--j only applies to su2");
    spec.two_j = parse_two_j(cfg.j);
  }
  if (!cfg.kappa.empty()) {
    if (spec.kind != AlgebraKind::SU11) throw BadInput("--kappa only applies to su11");
    spec.kappa = parse_kappa(cfg.kappa);
  }
  if (cfg.cutoff != 0) {
    if (!spec.truncated()) throw BadInput("--cutoff only applies to wh and su11");
    spec.cutoff = cfg.cutoff;
  }
  if (!cfg.irrep.empty()) {
    if (spec.kind != AlgebraKind::SUN) throw BadInput("--irrep only applies to su:<n>");
    spec = AlgebraSpec::parse("su:" + std::to_string(spec.n) + ":irrep=" + cfg.irrep);
  }
  if (spec.kind == AlgebraKind::SU2 && cfg.j.empty() && cfg.algebra.find("j=") == std::string::npos)
    throw BadInput("su2 needs a spin: --j <half-integer> or su2:j=<half-integer>");
  spec.validate();
  return spec;
}

Json report_json(const SurReport& r, const std::string& state_label) {
  Json j;
  j["state"] = state_label;
  j["relation"] = r.relation;
  j["lhs"] = r.lhs;
  j["bound"] = r.bound;
  j["bound_exact"] = to_string(r.bound_exact);
  j["margin"] = r.margin;
  j["satisfied"] = r.satisfied;
  if (r.tail_mass) j["tail_mass"] = *r.tail_mass;
  if (r.seed) j["seed"] = *r.seed;
  return j;
}

struct Outcome {
  Json config;
  Json results = Json::array();
  Json summary = Json::object();
  int exit_code = kExitOk;
};

Outcome cmd_verify(const RunConfig& cfg) {
  const AlgebraSpec spec = resolve_algebra(cfg);
  if (spec.kind == AlgebraKind::SUN && !spec.is_fundamental())
    throw BadInput("verify: su(n) states can only be generated in the defining irrep; use `table` for other labels");
  if (cfg.trials < 0) throw BadInput("--trials must be non-negative");
  const GeneratorSet gs = build(spec);

  Outcome o;
  o.config = {{"algebra", spec.to_string()}, {"trials", cfg.trials}};
  double min_margin = INFINITY;
  bool all = true;
  auto emit = [&](const StateVector& s, const std::string& label, std::optional<std::uint64_t> seed) {
    const SurReport r = check_sur(s, gs, seed);
    Json j = report_json(r, label);
    if (spec.kind == AlgebraKind::SU11) {
      const SurReport strong = check_su11_strong(s, gs, seed);
      j["strong"] = {{"lhs", strong.lhs}, {"bound", strong.bound}, {"bound_exact", to_string(strong.bound_exact)},
                     {"margin", strong.margin}, {"satisfied", strong.satisfied}};
      all = all && strong.satisfied;
    }
    min_margin = std::min(min_margin, r.margin);
    all = all && r.satisfied;
    o.results.push_back(std::move(j));
  };
  emit(saturating_state(gs), "saturating", std::nullopt);
  for (int t = 0; t < cfg.trials; ++t) {
    const std::uint64_t s = derive_seed(cfg.seed, static_cast<std::uint64_t>(t));
    emit(random_state(gs, s), "random", s);
  }
  o.summary = {{"count", o.results.size()},
               {"bound_exact", to_string(sur_bound_exact(spec))},
               {"min_margin", min_margin},
               {"all_satisfied", all}};
  o.exit_code = all ? kExitOk : kExitViolation;
  return o;
}

std::vector<std::vector<int>> label_grid(int rank, int max_label) {
  std::vector<std::vector<int>> out;
  std::vector<int> l(static_cast<std::size_t>(rank), 0);
  while (true) {
    out.push_back(l);
    int i = rank - 1;
    while (i >= 0 && l[static_cast<std::size_t>(i)] == max_label) l[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    ++l[static_cast<std::size_t>(i)];
  }
  return out;
}

Outcome cmd_table(const RunConfig& cfg) {
  if (cfg.max_label < 0 || cfg.max_label > 12) throw BadInput("--max-label must lie in [0, 12]");
  if (cfg.n != 0 && cfg.n < 2) throw BadInput("--n must be at least 2");
  Outcome o;
  o.config = {{"max_label", cfg.max_label}};
  if (cfg.n) o.config["n"] = cfg.n;
  const int lo = cfg.n ? cfg.n : 2, hi = cfg.n ? cfg.n : 5;
  for (int n = lo; n <= hi; ++n) {
    for (const auto& l : label_grid(n - 1, cfg.max_label)) {
      const DynkinLabel label(l);
      const Rational b = sur_bound(n, label), c2 = casimir_eigenvalue(n, label);
      o.results.push_back({{"n", n},
                           {"label", l},
                           {"bound", to_string(b)},
                           {"casimir", to_string(c2)},
                           {"bound_value", boost::rational_cast<double>(b)},
                           {"casimir_value", boost::rational_cast<double>(c2)}});
    }
  }
  o.summary = {{"rows", o.results.size()}};
  return o;
}

Outcome cmd_minimize(const RunConfig& cfg) {
  const AlgebraSpec spec = resolve_algebra(cfg);
  const GeneratorSet gs = build(spec);
  MinimizeOptions opt;
  opt.restarts = cfg.restarts;
  opt.max_iters = cfg.max_iters;
  opt.tol = cfg.tol;
  opt.seed = cfg.seed;
  if (opt.restarts < 1 || opt.max_iters < 0 || !(opt.tol > 0)) throw BadInput("invalid optimizer settings");
  const MinimizeResult r = minimize_variance_sum(gs, opt);
  const StateVector sat = saturating_state(gs);
  Outcome o;
  o.config = {{"algebra", spec.to_string()}, {"restarts", opt.restarts}, {"max_iters", opt.max_iters}, {"tol", opt.tol}};
  o.results.push_back({{"best_value", r.best_value},
                       {"bound", r.bound},
                       {"bound_exact", to_string(sur_bound_exact(spec))},
                       {"gap", r.gap},
                       {"converged", r.converged},
                       {"iterations", r.iterations},
                       {"total_iterations", r.total_iterations},
                       {"restarts_used", r.restarts_used},
                       {"best_restart", r.best_restart},
                       {"restart_values", r.restart_values},
                       {"overlap_with_saturating_state", std::norm(sat.amplitudes().dot(r.best_state.amplitudes()))}});
  const bool valid = r.gap >= -tol::kMargin;
  o.summary = {{"gap", r.gap}, {"valid", valid}, {"tight", valid && r.gap <= tol::kOptimizer}};
  o.exit_code = valid ? kExitOk : kExitViolation;
  return o;
}

Json witness_json(const WitnessReport& w) {
  return {{"lhs", w.lhs},
          {"rhs", w.rhs},
          {"margin", w.margin},
          {"violated", w.violated},
          {"total_variance", w.total_variance},
          {"total_variance_bound", w.total_variance_bound},
          {"total_variance_bound_exact", to_string(w.total_variance_bound_exact)},
          {"total_margin", w.total_margin},
          {"total_violated", w.total_violated}};
}

Outcome cmd_witness(const RunConfig& cfg) {
  const int n = cfg.n, particles = cfg.particles ? cfg.particles : cfg.n;
  if (n < 2) throw BadInput("--n must be at least 2");
  if (particles < 2) throw BadInput("--N must be at least 2");
  const CollectiveSet ops = collective_operators(n, particles);
  Outcome o;
  o.config = {{"n", n}, {"N", particles}, {"state", cfg.state}};
  bool ok = true;
  if (cfg.state == "slater") {
    if (particles != n) throw BadInput("slater state needs N = n");
    o.results.push_back(witness_json(witness(slater_state(n), ops)));
    o.results.back()["state"] = "slater";
  } else if (cfg.state == "product" || cfg.state == "random") {
    o.config["trials"] = cfg.trials;
    const bool product = cfg.state == "product";
    for (int t = 0; t < std::max(cfg.trials, 1); ++t) {
      const std::uint64_t s = derive_seed(cfg.seed, static_cast<std::uint64_t>(t));
      const StateVector psi = product ? random_product_state(n, particles, s) : haar_random_state(ops.dim, s);
      const WitnessReport w = witness(psi, ops);
      // a separable state that trips either criterion breaks the separability theorem
      if (product && (w.violated || w.total_violated)) ok = false;
      Json j = witness_json(w);
      j["state"] = cfg.state;
      j["seed"] = s;
      o.results.push_back(std::move(j));
    }
  } else {
    throw BadInput("--state must be one of slater, product, random");
  }
  int flagged = 0, total_flagged = 0;
  for (const auto& r : o.results) {
    flagged += r["violated"].get<bool>();
    total_flagged += r["total_violated"].get<bool>();
  }
  o.summary = {{"count", o.results.size()}, {"violated", flagged}, {"total_violated", total_flagged}};
  o.exit_code = ok ? kExitOk : kExitViolation;
  return o;
}

Outcome cmd_identities(const RunConfig& cfg) {
  std::vector<int> ns;
  if (cfg.n) ns.push_back(cfg.n);
  else ns = {3, 4, 5};
  Outcome o;
  o.config = {{"n", ns}, {"trials", cfg.trials}};
  bool ok = true;
  for (int n : ns) {
    if (n < 2) throw BadInput("--n must be at least 2");
    const IdentityReport r = identity_checks(n, cfg.trials, cfg.seed);
    const bool closed_form = r.cartan_square == Rational(2 * (n - 1), n) &&
                             r.offdiag_square == Rational(2 * (n * n - 1), n) - Rational(2 * (n - 1), n);
    const bool bloch_ok = r.bloch_max_deviation <= tol::kMargin;
    ok = ok && closed_form && bloch_ok && r.numeric_deviation <= tol::kStructural;
    o.results.push_back({{"n", n},
                         {"cartan_square", to_string(r.cartan_square)},
                         {"cartan_square_value", boost::rational_cast<double>(r.cartan_square)},
                         {"offdiag_square", to_string(r.offdiag_square)},
                         {"offdiag_square_value", boost::rational_cast<double>(r.offdiag_square)},
                         {"bloch_sum", to_string(r.bloch_expected)},
                         {"bloch_sum_value", boost::rational_cast<double>(r.bloch_expected)},
                         {"bloch_max_deviation", r.bloch_max_deviation},
                         {"witness_constant_per_particle", to_string(r.constant_per_particle)},
                         {"numeric_deviation", r.numeric_deviation}});
  }
  o.summary = {{"all_identities_hold", ok}};
  o.exit_code = ok ? kExitOk : kExitViolation;
  return o;
}

ComplexMatrix pick_observable(const GeneratorSet& gs, const std::string& name) {
  if (name.empty()) return gs.generator(0);
  // halved spin operators for su2
  if (gs.spec.kind == AlgebraKind::SU2 && (name == "Jx" || name == "Jy" || name == "Jz")) {
    const std::size_t idx = name == "Jx" ? 0 : name == "Jy" ? 1 : 2;
    return gs.generator(idx) / 2.0;
  }
  for (std::size_t a = 0; a < gs.names.size(); ++a)
    if (gs.names[a] == name) return gs.generator(a);
  if (name == "n" && gs.weight_operator.size()) return gs.weight_operator;
  throw BadInput("unknown observable '" + name + "'");
}

StateVector pick_state(const GeneratorSet& gs, const std::string& state, std::uint64_t seed) {
  if (state == "saturating") return saturating_state(gs);
  if (state == "random") return random_state(gs, seed);
  if (state.starts_with("basis:")) {
    try {
      return weight_basis_state(gs, std::stol(state.substr(6)));
    } catch (const std::out_of_range& e) {
      throw BadInput(e.what());
    }
  }
  throw BadInput("--state must be saturating, random or basis:<index>");
}

Outcome cmd_sample(const RunConfig& cfg) {
  const AlgebraSpec spec = resolve_algebra(cfg);
  const GeneratorSet gs = build(spec);
  const ComplexMatrix m = pick_observable(gs, cfg.observable);
  const StateVector s = pick_state(gs, cfg.state, derive_seed(cfg.seed, 0));
  const double exact = variance(s, m);
  const SampleResult r = sample_observable(s, m, cfg.shots, derive_seed(cfg.seed, 1));

  std::map<double, std::int64_t> counts;
  for (double x : r.samples) ++counts[x];
  Json histogram = Json::array();
  for (const auto& [value, count] : counts) histogram.push_back({{"outcome", value}, {"count", count}});

  Outcome o;
  o.config = {{"algebra", spec.to_string()},
              {"observable", cfg.observable.empty() ? gs.names.front() : cfg.observable},
              {"state", cfg.state},
              {"shots", cfg.shots}};
  const double z = r.standard_error > 0 ? (r.variance - exact) / r.standard_error : (r.variance == exact ? 0.0 : INFINITY);
  Json res = {{"mean", r.mean},
              {"variance_estimate", r.variance},
              {"standard_error", r.standard_error},
              {"sample_standard_error", r.sample_standard_error},
              {"exact_variance", exact},
              {"z_score", z},
              {"histogram", histogram}};
  if (cfg.emit_samples) res["samples"] = r.samples;
  o.results.push_back(std::move(res));
  o.summary = {{"within_5_standard_errors", std::abs(r.variance - exact) <= 5.0 * r.standard_error}};
  return o;
}

// Flattens nested objects with '.' and joins arrays with ';'.
void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    std::string joined;
    for (std::size_t i = 0; i < j.size(); ++i) joined += (i ? ";" : "") + (j[i].is_string() ? j[i].get<std::string>() : j[i].dump());
    out.emplace_back(prefix, joined);
  } else {
    out.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string render(const RunConfig& cfg, const Outcome& o) {
  std::ostringstream os;
  if (cfg.format == "csv") {
    bool header = false;
    for (const auto& row : o.results) {
      std::vector<std::pair<std::string, std::string>> cells{{"command", cfg.command}, {"run_seed", std::to_string(cfg.seed)}};
      flatten(row, "", cells);
      if (!header) {
        for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_escape(cells[i].first);
        os << '\n';
        header = true;
      }
      for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_escape(cells[i].second);
      os << '\n';
    }
    return os.str();
  }
  Json doc;
  doc["command"] = cfg.command;
  doc["config"] = o.config;
  doc["results"] = o.results;
  doc["summary"] = o.summary;
  doc["version"] = version();
  doc["seed"] = cfg.seed;
  os << doc.dump(2) << '\n';
  return os.str();
}

} // namespace

std::string version() { return LIESUR_VERSION; }

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Representation-only lower bounds on sums of variances: verification, tightness and entanglement tools",
               "liesur"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);

  RunConfig cfg;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Base seed (default 0)");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output,-o", cfg.output, "Write to this file instead of stdout");
  };
  auto add_algebra = [&](CLI::App* sub) {
    sub->add_option("--algebra,-a", cfg.algebra,
                    "wh[:cutoff=K] | su2:j=J | su11:kappa=P/Q,cutoff=K | su:N[:irrep=a,b,...]")
        ->required();
    sub->add_option("--j", cfg.j, "su2 spin (half-integer)");
    sub->add_option("--kappa", cfg.kappa, "su11 Bargmann index (1/4, 3/4 or half-integer)");
    sub->add_option("--cutoff", cfg.cutoff, "Truncation level count for wh / su11");
    sub->add_option("--irrep", cfg.irrep, "su(n) Dynkin label, comma separated");
  };

  auto* verify = app.add_subcommand("verify", "Check the sum-of-variances bound on random and saturating states");
  add_algebra(verify);
  add_common(verify);
  verify->add_option("--trials", cfg.trials, "Number of random states");

  auto* minimize = app.add_subcommand("minimize", "Minimize the variance sum over pure states");
  add_algebra(minimize);
  add_common(minimize);
  minimize->add_option("--restarts", cfg.restarts, "Independent starts (default 8)");
  minimize->add_option("--max-iters", cfg.max_iters, "Iteration cap per start (default 20000)");
  minimize->add_option("--tol", cfg.tol, "Tangent-gradient tolerance");

  auto* witness_cmd = app.add_subcommand("witness", "Evaluate the collective-operator entanglement criteria");
  add_common(witness_cmd);
  witness_cmd->add_option("--n", cfg.n, "su(n) of each particle")->required();
  witness_cmd->add_option("--N", cfg.particles, "Number of particles (default n)");
  witness_cmd->add_option("--state", cfg.state, "slater | product | random")->default_str("slater");
  witness_cmd->add_option("--trials", cfg.trials, "Number of product/random states");

  auto* identities = app.add_subcommand("identities", "Exact Gell-Mann square-sum identities and the Bloch identity");
  add_common(identities);
  identities->add_option("--n", cfg.n, "su(n); default runs n = 3, 4, 5");
  identities->add_option("--trials", cfg.trials, "Random states for the Bloch identity");

  auto* sample = app.add_subcommand("sample", "Simulate projective measurements and estimate a variance");
  add_algebra(sample);
  add_common(sample);
  sample->add_option("--observable", cfg.observable, "Generator name (x, p, Jx, Kx, A+, Lambda3, ...)");
  sample->add_option("--state", cfg.state, "saturating | random | basis:<index>");
  sample->add_option("--shots", cfg.shots, "Number of simulated measurements (default 10000)");
  sample->add_flag("--emit-samples", cfg.emit_samples, "Include every sampled outcome");

  auto* table = app.add_subcommand("table", "Exact bound and Casimir table over Dynkin labels");
  add_common(table);
  table->add_option("--max-label", cfg.max_label, "Largest Dynkin label entry");
  table->add_option("--n", cfg.n, "Restrict to one su(n); default n = 2..5");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitBadInput;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.command == "witness" && !witness_cmd->count("--state")) cfg.state = "slater";

  Outcome outcome;
  try {
    if (cfg.command == "verify") outcome = cmd_verify(cfg);
    else if (cfg.command == "minimize") outcome = cmd_minimize(cfg);
    else if (cfg.command == "witness") outcome = cmd_witness(cfg);
    else if (cfg.command == "identities") outcome = cmd_identities(cfg);
    else if (cfg.command == "sample") outcome = cmd_sample(cfg);
    else outcome = cmd_table(cfg);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitViolation;
  }

  const std::string text = render(cfg, outcome);
  if (cfg.output.empty()) {
    out << text;
  } else {
    std::filesystem::path path(cfg.output);
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir && path.is_relative()) path = std::filesystem::path(dir) / path;
    std::ofstream file(path, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << path << " for writing\n";
      return kExitBadInput;
    }
    file << text;
  }
  return outcome.exit_code;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("liesur");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace liesur::cli
