#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gcim/adapt.hpp"
#include "gcim/resources.hpp"
#include "gcim/shots.hpp"
#include "gcim/spectrum.hpp"

namespace gcim {

// Writes a sibling temp file and renames it over path; creates parent directories.
// Throws ResourceError.
void write_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_text(const std::filesystem::path& path);

// Shortest text that reads back to the same double; "" for nullopt.
std::string format_number(double v);
std::string format_number(const std::optional<double>& v);

nlohmann::json recipe_json(const BasisRecipe& r);
BasisRecipe recipe_from_json(const nlohmann::json& j);

struct TraceHeader {
  std::string algorithm;
  int n_qubits = 0;
  int n_alpha = 0;
  int n_beta = 0;
  std::size_t pool_size = 0;
  std::size_t n_term = 0;
  double reference_energy = 0.0;
  std::optional<double> exact_energy;
};

TraceHeader trace_header(const AdaptTrace& trace, const Problem& problem);

// A header line, one line per iteration and a final line. Wall times are left out so
// equal inputs give byte-identical files.
std::string trace_jsonl(const AdaptTrace& trace, const Problem& problem);

struct TraceReplay {
  TraceHeader header;
  AdaptTrace trace;  // iterations, convergence flags and final energies only
};

// Throws ParseError carrying the line number.
TraceReplay parse_trace_jsonl(const std::string& text);

nlohmann::json summary_json(const AdaptTrace& trace, const Problem& problem, double wall_seconds);

std::string convergence_csv(const AdaptTrace& trace);

// Errors against each trace's exact energy on shared iteration numbers, then a
// chemical-accuracy row. Throws ConfigError for fewer than two traces or a missing exact energy.
std::string compare_csv(const std::vector<AdaptTrace>& traces);

struct NoiseRow {
  double tau = 0.0;
  bool importance_sampling = false;
  int runs = 0;
  McSummary summary;
};

std::string noise_csv(const std::vector<NoiseRow>& rows);

// One row per (iteration, scheme) with the selected generator's count and the
// ansatz product count. The pool is rebuilt from the header's register size.
std::string resources_csv(const TraceReplay& replay, const std::vector<CnotScheme>& schemes);
std::string measurements_csv(const std::vector<MeasurementEstimate>& m);

nlohmann::json spectrum_json(const ExactSpectrum& s, const Sector& sector, int n_qubits,
                             double reference_energy);

}  // namespace gcim
