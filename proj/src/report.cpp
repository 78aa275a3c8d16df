#include "gcim/report.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gcim/errors.hpp"

namespace gcim {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::optional<double> error_of(double energy, const std::optional<double>& exact) {
  if (!exact) return std::nullopt;
  return energy - *exact;
}

}  // namespace

void write_atomic(const fs::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  if (ec) throw ResourceError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ResourceError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw ResourceError("write failed for " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw ResourceError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_number(double v) {
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string format_number(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

json recipe_json(const BasisRecipe& r) {
  json out = json::array();
  for (const auto& f : r.factors) out.push_back({f.op, f.theta});
  return out;
}

BasisRecipe recipe_from_json(const json& j) {
  BasisRecipe r;
  for (const auto& f : j) r.factors.push_back({f.at(0).get<std::size_t>(), f.at(1).get<double>()});
  return r;
}

TraceHeader trace_header(const AdaptTrace& trace, const Problem& problem) {
  TraceHeader h;
  h.algorithm = to_string(trace.algorithm);
  h.n_qubits = problem.n_qubits;
  h.n_alpha = problem.n_alpha;
  h.n_beta = problem.n_beta;
  h.pool_size = problem.pool_size();
  h.n_term = problem.hamiltonian.size();
  h.reference_energy = problem.reference_energy;
  h.exact_energy = trace.exact_energy;
  return h;
}

std::string trace_jsonl(const AdaptTrace& trace, const Problem& problem) {
  const TraceHeader h = trace_header(trace, problem);
  std::string out;
  out += json{{"type", "header"},
              {"algorithm", h.algorithm},
              {"n_qubits", h.n_qubits},
              {"n_alpha", h.n_alpha},
              {"n_beta", h.n_beta},
              {"pool_size", h.pool_size},
              {"n_term", h.n_term},
              {"reference_energy", h.reference_energy},
              {"exact_energy", optional_json(h.exact_energy)}}
             .dump();
  out += '\n';
  for (const auto& rec : trace.iterations) {
    json added = json::array();
    for (const auto& r : rec.added) added.push_back(recipe_json(r));
    out += json{{"type", "iteration"},
                {"iteration", rec.iteration},
                {"selected", rec.selected},
                {"label", rec.label},
                {"gradient_norm_sum", rec.gradient_norm_sum},
                {"gradients", rec.gradients},
                {"energy", rec.energy},
                {"error", optional_json(error_of(rec.energy, h.exact_energy))},
                {"vqe_energy", optional_json(rec.vqe_energy)},
                {"subspace_dim", rec.subspace_dim},
                {"kept_dim", rec.kept_dim},
                {"rounds", rec.rounds},
                {"added", added},
                {"ansatz", recipe_json(rec.ansatz)}}
               .dump();
    out += '\n';
  }
  out += json{{"type", "final"},
              {"converged", trace.converged},
              {"stop_reason", trace.stop_reason},
              {"final_energy", trace.final_energy},
              {"vqe_energy", optional_json(trace.vqe_energy)},
              {"error", optional_json(trace.error)},
              {"overlap_deficit", optional_json(trace.overlap_deficit)},
              {"total_rounds", trace.total_rounds},
              {"iterations", trace.iterations.size()}}
             .dump();
  out += '\n';
  return out;
}

TraceReplay parse_trace_jsonl(const std::string& text) {
  TraceReplay r;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_header = false, have_final = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      const std::string type = j.at("type").get<std::string>();
      if (type == "header") {
        if (have_header) throw ParseError("second header record", lineno);
        have_header = true;
        r.header.algorithm = j.at("algorithm").get<std::string>();
        r.trace.algorithm = parse_algorithm(r.header.algorithm);
        r.header.n_qubits = j.at("n_qubits").get<int>();
        r.header.n_alpha = j.at("n_alpha").get<int>();
        r.header.n_beta = j.at("n_beta").get<int>();
        r.header.pool_size = j.at("pool_size").get<std::size_t>();
        r.header.n_term = j.at("n_term").get<std::size_t>();
        r.header.reference_energy = j.at("reference_energy").get<double>();
        r.header.exact_energy = optional_from(j, "exact_energy");
        r.trace.exact_energy = r.header.exact_energy;
      } else if (type == "iteration") {
        if (!have_header || have_final) throw ParseError("iteration record outside header/final", lineno);
        IterationRecord rec;
        rec.iteration = j.at("iteration").get<int>();
        rec.selected = j.at("selected").get<std::size_t>();
        rec.label = j.at("label").get<std::string>();
        rec.gradient_norm_sum = j.at("gradient_norm_sum").get<double>();
        rec.gradients = j.at("gradients").get<std::vector<double>>();
        rec.energy = j.at("energy").get<double>();
        rec.vqe_energy = optional_from(j, "vqe_energy");
        rec.subspace_dim = j.at("subspace_dim").get<std::size_t>();
        rec.kept_dim = j.at("kept_dim").get<Eigen::Index>();
        rec.rounds = j.at("rounds").get<int>();
        for (const auto& a : j.at("added")) rec.added.push_back(recipe_from_json(a));
        rec.ansatz = recipe_from_json(j.at("ansatz"));
        r.trace.iterations.push_back(std::move(rec));
      } else if (type == "final") {
        if (!have_header || have_final) throw ParseError("final record out of place", lineno);
        have_final = true;
        r.trace.converged = j.at("converged").get<bool>();
        r.trace.stop_reason = j.at("stop_reason").get<std::string>();
        r.trace.final_energy = j.at("final_energy").get<double>();
        r.trace.vqe_energy = optional_from(j, "vqe_energy");
        r.trace.error = optional_from(j, "error");
        r.trace.overlap_deficit = optional_from(j, "overlap_deficit");
        r.trace.total_rounds = j.at("total_rounds").get<int>();
      } else {
        throw ParseError("unknown record type '" + type + "'", lineno);
      }
    } catch (const json::exception& e) {
      throw ParseError(e.what(), lineno);
    } catch (const ConfigError& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  if (!have_header) throw ParseError("trace has no header record", 0);
  return r;
}

json summary_json(const AdaptTrace& trace, const Problem& problem, double wall_seconds) {
  double grad_s = 0.0, energy_s = 0.0;
  json per_iteration = json::array();
  for (const auto& rec : trace.iterations) {
    grad_s += rec.gradient_seconds;
    energy_s += rec.energy_seconds;
    per_iteration.push_back({{"iteration", rec.iteration},
                             {"gradient_seconds", rec.gradient_seconds},
                             {"energy_seconds", rec.energy_seconds}});
  }
  const std::size_t dim = trace.iterations.empty() ? 0 : trace.iterations.back().subspace_dim;
  return json{{"algorithm", to_string(trace.algorithm)},
              {"converged", trace.converged},
              {"stop_reason", trace.stop_reason},
              {"iterations", trace.iterations.size()},
              {"final_energy", trace.final_energy},
              {"vqe_energy", optional_json(trace.vqe_energy)},
              {"exact_energy", optional_json(trace.exact_energy)},
              {"error", optional_json(trace.error)},
              {"overlap_deficit", optional_json(trace.overlap_deficit)},
              {"reference_energy", problem.reference_energy},
              {"optimization_rounds", trace.total_rounds},
              {"subspace_dim", dim},
              {"n_qubits", problem.n_qubits},
              {"pool_size", problem.pool_size()},
              {"timings",
               {{"gradient_seconds", grad_s},
                {"energy_seconds", energy_s},
                {"wall_seconds", wall_seconds},
                {"per_iteration", per_iteration}}}};
}

std::string convergence_csv(const AdaptTrace& trace) {
  std::string out =
      "iteration,energy,error,vqe_energy,subspace_dim,kept_dim,gradient_norm_sum,rounds,selected,label\n";
  for (const auto& rec : trace.iterations) {
    out += std::to_string(rec.iteration) + ',' + format_number(rec.energy) + ',' +
           format_number(error_of(rec.energy, trace.exact_energy)) + ',' + format_number(rec.vqe_energy) +
           ',' + std::to_string(rec.subspace_dim) + ',' + std::to_string(rec.kept_dim) + ',' +
           format_number(rec.gradient_norm_sum) + ',' + std::to_string(rec.rounds) + ',' +
           std::to_string(rec.selected) + ',' + csv_quote(rec.label) + '\n';
  }
  return out;
}

std::string compare_csv(const std::vector<AdaptTrace>& traces) {
  if (traces.size() < 2) throw ConfigError("compare needs at least two algorithms");
  struct Column {
    std::string name;
    const AdaptTrace* trace;
    bool vqe;
  };
  std::vector<Column> cols;
  std::size_t rows = 0;
  for (const auto& t : traces) {
    if (!t.exact_energy) throw ConfigError("compare needs the exact reference energy");
    const std::string name = to_string(t.algorithm);
    cols.push_back({name, &t, false});
    const bool has_vqe = std::any_of(t.iterations.begin(), t.iterations.end(),
                                     [](const IterationRecord& r) { return r.vqe_energy.has_value(); });
    if (has_vqe && t.algorithm != Algorithm::AdaptVqe) cols.push_back({name + ":vqe", &t, true});
    rows = std::max(rows, t.iterations.size());
  }
  std::string out = "iteration";
  for (const auto& c : cols) out += ',' + c.name;
  out += '\n';
  for (std::size_t k = 0; k < rows; ++k) {
    out += std::to_string(k + 1);
    for (const auto& c : cols) {
      out += ',';
      if (k >= c.trace->iterations.size()) continue;
      const auto& rec = c.trace->iterations[k];
      if (c.vqe) {
        if (rec.vqe_energy) out += format_number(*rec.vqe_energy - *c.trace->exact_energy);
      } else {
        out += format_number(rec.energy - *c.trace->exact_energy);
      }
    }
    out += '\n';
  }
  out += "chemical-accuracy";
  for (std::size_t c = 0; c < cols.size(); ++c) out += ',' + format_number(kChemicalAccuracy);
  out += '\n';
  return out;
}

std::string noise_csv(const std::vector<NoiseRow>& rows) {
  std::string out = "tau,is_flag,runs,mean_error,median_error,ci_low,ci_high\n";
  for (const auto& r : rows)
    out += format_number(r.tau) + ',' + (r.importance_sampling ? "1" : "0") + ',' + std::to_string(r.runs) +
           ',' + format_number(r.summary.mean_error) + ',' + format_number(r.summary.median_error) + ',' +
           format_number(r.summary.ci_low) + ',' + format_number(r.summary.ci_high) + '\n';
  return out;
}

std::string resources_csv(const TraceReplay& replay, const std::vector<CnotScheme>& schemes) {
  std::string out = "iteration,error,new_generator_cnots,product_cnots,scheme\n";
  if (replay.trace.iterations.empty()) return out;
  if (replay.header.n_qubits % 2 != 0) throw ConsistencyError("trace register size is odd");
  const auto pool = build_pool(replay.header.n_qubits / 2);
  if (pool.size() != replay.header.pool_size)
    throw ConsistencyError("trace pool size does not match the rebuilt pool");
  for (const auto& rec : replay.trace.iterations) {
    if (rec.selected >= pool.size()) throw RangeError("trace names a pool index beyond the pool");
    const auto err = error_of(rec.energy, replay.header.exact_energy);
    for (CnotScheme s : schemes)
      out += std::to_string(rec.iteration) + ',' + format_number(err) + ',' +
             std::to_string(cnot_count(pool[rec.selected], s)) + ',' +
             std::to_string(ansatz_cnot_total(rec.ansatz, pool, s)) + ',' + to_string(s) + '\n';
  }
  return out;
}

std::string measurements_csv(const std::vector<MeasurementEstimate>& m) {
  std::string out = "iteration,generating_functions,n_term,n_opt,vqe_style,gcim_matrix,gcim_style\n";
  for (const auto& e : m)
    out += std::to_string(e.iterations) + ',' + std::to_string(e.generating_functions) + ',' +
           std::to_string(e.n_term) + ',' + format_number(e.n_opt) + ',' + format_number(e.vqe_style) + ',' +
           format_number(e.gcim_matrix) + ',' + format_number(e.gcim_style) + '\n';
  return out;
}

json spectrum_json(const ExactSpectrum& s, const Sector& sector, int n_qubits, double reference_energy) {
  std::vector<double> ev(s.eigenvalues.data(), s.eigenvalues.data() + s.eigenvalues.size());
  std::vector<double> res(s.residuals.data(), s.residuals.data() + s.residuals.size());
  return json{{"n_qubits", n_qubits},
              {"n_alpha", sector.n_alpha},
              {"n_beta", sector.n_beta},
              {"singlet_only", sector.singlet_only},
              {"reference_energy", reference_energy},
              {"eigenvalues", ev},
              {"residuals", res}};
}

}  // namespace gcim
