#pragma once

#include <filesystem>
#include <string>

#include "gcim/pauli.hpp"

namespace gcim {

// [{"pauli": "XZ", "coeff_re": 0.5, "coeff_im": 0.0}, ...]; duplicates merge.
PauliSum parse_pauli_json(const std::string& text);
PauliSum read_pauli_json(const std::filesystem::path& path);
std::string write_pauli_json(const PauliSum& h);

}  // namespace gcim
