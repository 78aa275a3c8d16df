#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gcim/adapt.hpp"
#include "gcim/resources.hpp"
#include "gcim/shots.hpp"

namespace gcim {

struct HamiltonianSource {
  enum class Kind { Fcidump, PauliJson, Builtin };
  Kind kind = Kind::Builtin;
  std::filesystem::path path;
  int n_alpha = 0;  // Pauli JSON only
  int n_beta = 0;
  std::string builtin = "hubbard-dimer";
  double t = 1.0;
  double u = 2.0;
};

struct NoiseSettings {
  std::vector<double> tau_grid{1e3, 1e4, 1e5, 1e6};
  int runs = 100;
  double threshold = 1e-5;
  std::size_t basis_size = 0;  // leading generating functions kept; 0 keeps all
  std::vector<bool> is_flags{false, true};  // importance sampling off and on per τ
};

struct RunConfig {
  HamiltonianSource source;
  std::vector<Algorithm> algorithms{Algorithm::AdaptGcim};
  AdaptConfig adapt;
  ShotConfig shots;
  NoiseSettings noise;
  std::optional<std::filesystem::path> trace;  // resources input; defaults to <out>/trace.jsonl
  std::vector<CnotScheme> schemes{std::begin(kCnotSchemes), std::end(kCnotSchemes)};
  std::optional<bool> exact;  // unset: computed up to kExactQubitLimit qubits
  int exact_levels = 6;
  std::filesystem::path out = "gcim-out";
  std::uint64_t seed = 0;
};

inline constexpr int kExactQubitLimit = 16;

// Relative paths resolve against base_dir. Unknown keys are rejected. Throws ConfigError.
RunConfig parse_run_config(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

Problem load_problem(const HamiltonianSource& source);

// Exit codes: 0 converged, 2 unconverged, 1 error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gcim
