#include "gcim/pauli_json.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gcim/errors.hpp"

namespace gcim {

PauliSum parse_pauli_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
  }
  if (!doc.is_array()) throw ParseError("pauli document must be a list of records", 0);

  PauliSum out;
  bool sized = false;
  for (std::size_t k = 0; k < doc.size(); ++k) {
    const auto& rec = doc[k];
    if (!rec.is_object() || !rec.contains("pauli") || !rec["pauli"].is_string())
      throw ParseError("record " + std::to_string(k) + " lacks a 'pauli' string", 0);
    const auto label = rec["pauli"].get<std::string>();
    const PauliString p = PauliString::parse(label);
    if (!sized) {
      out = PauliSum(p.n_qubits());
      sized = true;
    } else if (p.n_qubits() != out.n_qubits()) {
      throw ShapeError("record " + std::to_string(k) + ": pauli length " +
                       std::to_string(p.n_qubits()) + " differs from " +
                       std::to_string(out.n_qubits()));
    }
    auto number = [&](const char* key) {
      if (!rec.contains(key)) return 0.0;
      if (!rec[key].is_number()) throw ParseError(std::string("'") + key + "' must be numeric", 0);
      return rec[key].get<double>();
    };
    double re = number("coeff_re");
    if (rec.contains("coeff")) re += number("coeff");
    out.add(p, Complex{re, number("coeff_im")});
  }
  return simplify(out);
}

PauliSum read_pauli_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open pauli JSON file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_pauli_json(ss.str());
}

std::string write_pauli_json(const PauliSum& h) {
  nlohmann::json doc = nlohmann::json::array();
  const PauliSum merged = simplify(h);
  for (const auto& [p, c] : merged.terms())
    doc.push_back({{"pauli", p.str()}, {"coeff_re", c.real()}, {"coeff_im", c.imag()}});
  return doc.dump(1);
}

}  // namespace gcim
