#include "gcim/cli.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>

#include <CLI11.hpp>

#include "gcim/errors.hpp"
#include "gcim/fcidump.hpp"
#include "gcim/models.hpp"
#include "gcim/pauli_json.hpp"
#include "gcim/report.hpp"
#include "gcim/spectrum.hpp"

namespace gcim {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; }))
      throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

template <class T>
void read(const json& j, const char* key, T& dst, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    dst = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + " has the wrong type");
  }
}

fs::path resolve(const fs::path& p, const fs::path& base) {
  return p.is_absolute() || base.empty() ? p : base / p;
}

HamiltonianSource parse_source(const json& j, const fs::path& base) {
  check_keys(j, {"fcidump", "pauli_json", "n_alpha", "n_beta", "builtin", "t", "U"}, "hamiltonian");
  const int kinds = int(j.contains("fcidump")) + int(j.contains("pauli_json")) + int(j.contains("builtin"));
  if (kinds != 1) throw ConfigError("hamiltonian needs exactly one of fcidump, pauli_json, builtin");
  HamiltonianSource s;
  std::string path;
  if (j.contains("fcidump")) {
    s.kind = HamiltonianSource::Kind::Fcidump;
    read(j, "fcidump", path, "hamiltonian");
    s.path = resolve(path, base);
  } else if (j.contains("pauli_json")) {
    s.kind = HamiltonianSource::Kind::PauliJson;
    read(j, "pauli_json", path, "hamiltonian");
    s.path = resolve(path, base);
    if (!j.contains("n_alpha") || !j.contains("n_beta"))
      throw ConfigError("hamiltonian.pauli_json needs n_alpha and n_beta");
    read(j, "n_alpha", s.n_alpha, "hamiltonian");
    read(j, "n_beta", s.n_beta, "hamiltonian");
    if (s.n_alpha < 0 || s.n_beta < 0) throw ConfigError("electron counts must be non-negative");
  } else {
    s.kind = HamiltonianSource::Kind::Builtin;
    read(j, "builtin", s.builtin, "hamiltonian");
    if (s.builtin != "hubbard-dimer") throw ConfigError("unknown builtin model '" + s.builtin + "'");
    read(j, "t", s.t, "hamiltonian");
    read(j, "U", s.u, "hamiltonian");
  }
  return s;
}

AdaptConfig parse_adapt(const json& j) {
  check_keys(j,
             {"theta_init", "gcim_tol", "vqe_grad_tol", "t_usr", "max_iterations", "s_threshold", "solver", "m",
              "n", "optimizer_rounds", "exhaust_pool"},
             "adapt");
  AdaptConfig c;
  read(j, "theta_init", c.theta_init, "adapt");
  read(j, "gcim_tol", c.gcim_tol, "adapt");
  read(j, "vqe_grad_tol", c.vqe_grad_tol, "adapt");
  read(j, "t_usr", c.t_usr, "adapt");
  read(j, "max_iterations", c.max_iterations, "adapt");
  read(j, "s_threshold", c.s_threshold, "adapt");
  read(j, "m", c.m, "adapt");
  read(j, "n", c.n, "adapt");
  read(j, "optimizer_rounds", c.optimizer_rounds, "adapt");
  read(j, "exhaust_pool", c.exhaust_pool, "adapt");
  std::string solver = "orthonormal";
  read(j, "solver", solver, "adapt");
  if (solver == "orthonormal") c.solver = SubspaceSolver::Orthonormal;
  else if (solver == "gevp") c.solver = SubspaceSolver::Gevp;
  else throw ConfigError("adapt.solver must be 'orthonormal' or 'gevp'");
  return c;
}

ShotConfig parse_shots(const json& j) {
  check_keys(j, {"tau", "s_multiplier", "mode", "importance_sampling"}, "shots");
  ShotConfig c;
  read(j, "tau", c.tau, "shots");
  read(j, "s_multiplier", c.s_multiplier, "shots");
  read(j, "importance_sampling", c.importance_sampling, "shots");
  std::string mode = to_string(c.mode);
  read(j, "mode", mode, "shots");
  c.mode = parse_shot_mode(mode);
  return c;
}

NoiseSettings parse_noise(const json& j) {
  check_keys(j, {"tau_grid", "runs", "threshold", "basis_size", "is_flags"}, "noise");
  NoiseSettings n;
  read(j, "tau_grid", n.tau_grid, "noise");
  read(j, "runs", n.runs, "noise");
  read(j, "threshold", n.threshold, "noise");
  read(j, "basis_size", n.basis_size, "noise");
  read(j, "is_flags", n.is_flags, "noise");
  if (n.tau_grid.empty()) throw ConfigError("noise.tau_grid is empty");
  if (n.is_flags.empty()) throw ConfigError("noise.is_flags is empty");
  if (n.runs < 2) throw ConfigError("noise.runs must be at least 2");
  if (!(n.threshold > 0.0)) throw ConfigError("noise.threshold must be positive");
  return n;
}

std::optional<ExactReference> maybe_exact(const RunConfig& cfg, const Problem& p) {
  const bool want = cfg.exact.value_or(p.n_qubits <= kExactQubitLimit);
  if (!want) return std::nullopt;
  return exact_reference(p);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Outcome {
  AdaptTrace trace;
  double wall = 0.0;
};

Outcome run_algorithm(const Problem& p, const RunConfig& cfg, Algorithm a,
                      const std::optional<ExactReference>& exact) {
  AdaptConfig c = cfg.adapt;
  c.algorithm = a;
  c.seed = cfg.seed;
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o{run_adapt(p, c), 0.0};
  o.wall = seconds_since(t0);
  if (exact) attach_exact(o.trace, *exact);
  return o;
}

void write_run(const fs::path& dir, const Outcome& o, const Problem& p) {
  write_atomic(dir / "trace.jsonl", trace_jsonl(o.trace, p));
  write_atomic(dir / "summary.json", summary_json(o.trace, p, o.wall).dump(2) + "\n");
  write_atomic(dir / "convergence.csv", convergence_csv(o.trace));
}

void report(std::ostream& out, const AdaptTrace& t) {
  out << to_string(t.algorithm) << ": " << (t.converged ? "converged" : "not converged") << " ("
      << t.stop_reason << ") after " << t.iterations.size() << " iterations, energy "
      << format_number(t.final_energy);
  if (t.error) out << ", error " << format_number(*t.error);
  out << '\n';
}

int cmd_run(const RunConfig& cfg, std::ostream& out) {
  const Problem p = load_problem(cfg.source);
  const auto exact = maybe_exact(cfg, p);
  bool all = true;
  for (Algorithm a : cfg.algorithms) {
    const Outcome o = run_algorithm(p, cfg, a, exact);
    write_run(cfg.algorithms.size() == 1 ? cfg.out : cfg.out / to_string(a), o, p);
    report(out, o.trace);
    all = all && o.trace.converged;
  }
  return all ? 0 : 2;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out) {
  if (cfg.algorithms.size() < 2) throw ConfigError("compare needs at least two algorithms");
  const Problem p = load_problem(cfg.source);
  const auto exact = maybe_exact(cfg, p);
  if (!exact) throw ConfigError("compare needs the exact reference; set \"exact\": true");
  std::vector<AdaptTrace> traces;
  bool all = true;
  for (Algorithm a : cfg.algorithms) {
    Outcome o = run_algorithm(p, cfg, a, exact);
    write_run(cfg.out / to_string(a), o, p);
    report(out, o.trace);
    all = all && o.trace.converged;
    traces.push_back(std::move(o.trace));
  }
  write_atomic(cfg.out / "compare.csv", compare_csv(traces));
  return all ? 0 : 2;
}

int cmd_noise(const RunConfig& cfg, std::ostream& out) {
  const Problem p = load_problem(cfg.source);
  const Outcome o = run_algorithm(p, cfg, cfg.algorithms.front(), std::nullopt);
  std::vector<StateVector> states;
  for (const auto& r : o.trace.basis) {
    if (cfg.noise.basis_size != 0 && states.size() == cfg.noise.basis_size) break;
    states.push_back(prepare_state(r, p));
  }
  if (states.empty()) throw ConfigError("the chosen algorithm produced no generating functions");
  MatrixDecomposition d = decompose_matrices(states, p.hamiltonian);
  const double reference = solve_gevp(d.exact.h, d.exact.s, cfg.adapt.s_threshold).eigenvalues(0);

  std::vector<NoiseRow> rows;
  for (double tau : cfg.noise.tau_grid)
    for (bool is : cfg.noise.is_flags) {
      ShotConfig c = cfg.shots;
      c.tau = tau;
      c.importance_sampling = is;
      c.seed = cfg.seed;
      c.validate();
      allocate(d, c);
      rows.push_back({tau, is, cfg.noise.runs, mc_experiment(d, reference, c, cfg.noise.runs, cfg.noise.threshold)});
    }
  write_atomic(cfg.out / "noise.csv", noise_csv(rows));
  out << "noise: " << rows.size() << " rows over a " << states.size() << "-function basis\n";
  return 0;
}

int cmd_resources(const RunConfig& cfg, std::ostream& out) {
  const fs::path path = cfg.trace.value_or(cfg.out / "trace.jsonl");
  if (!fs::exists(path)) throw ResourceError("trace not found: " + path.string());
  const TraceReplay replay = parse_trace_jsonl(read_text(path));
  write_atomic(cfg.out / "resources.csv", resources_csv(replay, cfg.schemes));
  write_atomic(cfg.out / "measurements.csv",
               measurements_csv(measurement_estimate(replay.trace, replay.header.n_term)));
  out << "resources: " << replay.trace.iterations.size() << " iterations costed\n";
  return 0;
}

int cmd_exact(const RunConfig& cfg, std::ostream& out) {
  const Problem p = load_problem(cfg.source);
  const Sector sector{p.n_alpha, p.n_beta, false};
  const auto dim = sector_indices(p.n_qubits, p.n_alpha, p.n_beta).size();
  const int k = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(cfg.exact_levels), dim));
  const ExactSpectrum s = exact_spectrum(p.hamiltonian, k, sector);
  json j = spectrum_json(s, sector, p.n_qubits, p.reference_energy);
  j["ground_energy"] = exact_reference(p).energy;
  write_atomic(cfg.out / "spectrum.json", j.dump(2) + "\n");
  out << "exact: ground energy " << format_number(j["ground_energy"].get<double>()) << '\n';
  return 0;
}

}  // namespace

RunConfig parse_run_config(const json& j, const fs::path& base) {
  check_keys(j,
             {"hamiltonian", "algorithm", "algorithms", "adapt", "shots", "noise", "resources", "exact",
              "exact_levels", "out", "seed"},
             "config");
  RunConfig c;
  if (j.contains("hamiltonian")) c.source = parse_source(j.at("hamiltonian"), base);
  if (j.contains("algorithm") && j.contains("algorithms"))
    throw ConfigError("give either algorithm or algorithms, not both");
  std::vector<std::string> names;
  if (j.contains("algorithm")) {
    std::string a;
    read(j, "algorithm", a, "config");
    names.push_back(a);
  }
  read(j, "algorithms", names, "config");
  if (j.contains("algorithms") && names.empty()) throw ConfigError("algorithms is empty");
  if (!names.empty()) {
    c.algorithms.clear();
    for (const auto& n : names) c.algorithms.push_back(parse_algorithm(n));
  }
  if (j.contains("adapt")) c.adapt = parse_adapt(j.at("adapt"));
  c.adapt.validate();
  if (j.contains("shots")) c.shots = parse_shots(j.at("shots"));
  c.shots.validate();
  if (j.contains("noise")) c.noise = parse_noise(j.at("noise"));
  if (j.contains("resources")) {
    const json& r = j.at("resources");
    check_keys(r, {"trace", "schemes"}, "resources");
    if (r.contains("trace")) {
      std::string t;
      read(r, "trace", t, "resources");
      c.trace = resolve(t, base);
    }
    if (r.contains("schemes")) {
      std::vector<std::string> s;
      read(r, "schemes", s, "resources");
      if (s.empty()) throw ConfigError("resources.schemes is empty");
      c.schemes.clear();
      for (const auto& n : s) c.schemes.push_back(parse_cnot_scheme(n));
    }
  }
  if (j.contains("exact")) {
    bool e = false;
    read(j, "exact", e, "config");
    c.exact = e;
  }
  read(j, "exact_levels", c.exact_levels, "config");
  if (c.exact_levels < 1) throw ConfigError("exact_levels must be at least 1");
  if (j.contains("out")) {
    std::string o;
    read(j, "out", o, "config");
    c.out = resolve(o, base);
  }
  read(j, "seed", c.seed, "config");
  return c;
}

RunConfig load_run_config(const fs::path& path) {
  if (!fs::exists(path)) throw ConfigError("config not found: " + path.string());
  json j;
  try {
    j = json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_run_config(j, path.parent_path());
}

Problem load_problem(const HamiltonianSource& s) {
  switch (s.kind) {
    case HamiltonianSource::Kind::Fcidump: return make_problem(read_fcidump(s.path));
    case HamiltonianSource::Kind::PauliJson: return make_problem(read_pauli_json(s.path), s.n_alpha, s.n_beta);
    default: return make_problem(hubbard_dimer(s.t, s.u));
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adaptive generator-coordinate subspace runs", "gcim"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  std::optional<std::uint64_t> seed;
  struct Verb {
    const char* name;
    const char* help;
    int (*fn)(const RunConfig&, std::ostream&);
  };
  const Verb verbs[] = {
      {"run", "run each configured algorithm and write its trace, summary and convergence table", cmd_run},
      {"compare", "run two or more algorithms and write aligned error columns", cmd_compare},
      {"noise", "Monte Carlo shot-noise sweep over the configured shot grid", cmd_noise},
      {"resources", "CNOT and measurement estimates replayed from a trace", cmd_resources},
      {"exact", "lowest eigenvalues of the reference particle-number sector", cmd_exact},
  };
  std::vector<CLI::App*> subs;
  for (const auto& v : verbs) {
    CLI::App* sub = app.add_subcommand(v.name, v.help);
    sub->add_option("--config", config_path, "JSON run configuration (default: builtin toy model)");
    sub->add_option("--seed", seed, "overrides the configured seed");
    sub->add_option("--out", out_dir, "output directory (overrides the configured one)");
    subs.push_back(sub);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  try {
    RunConfig cfg = config_path.empty() ? parse_run_config(json::object()) : load_run_config(config_path);
    if (seed) cfg.seed = *seed;
    if (!out_dir.empty()) cfg.out = out_dir;
    for (std::size_t k = 0; k < subs.size(); ++k)
      if (subs[k]->parsed()) return verbs[k].fn(cfg, out);
    return 1;
  } catch (const std::exception& e) {
    err << "gcim: error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace gcim
