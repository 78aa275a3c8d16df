#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "gcim/fermion.hpp"

namespace gcim {

// Chemist-notation (pq|rs) over real orbitals.
struct SpatialIntegrals {
  int n_orb = 0;
  int n_elec = 0;
  int ms2 = 0;
  double core_energy = 0.0;
  Eigen::MatrixXd one_body;
  std::vector<double> two_body;  // n_orb^4, index ((p*n+q)*n+r)*n+s

  SpatialIntegrals() = default;
  SpatialIntegrals(int n_orb, int n_elec, int ms2 = 0);

  double eri(int p, int q, int r, int s) const { return two_body[index(p, q, r, s)]; }
  // Writes all eight permutation-equivalent slots.
  void set_eri(int p, int q, int r, int s, double v);
  void set_one_body(int p, int q, double v);

  int n_alpha() const { return (n_elec + ms2) / 2; }
  int n_beta() const { return (n_elec - ms2) / 2; }

  // Throws ConsistencyError on broken symmetry or bad counts.
  void validate(double tol = 1e-12) const;

 private:
  std::size_t index(int p, int q, int r, int s) const {
    const auto n = static_cast<std::size_t>(n_orb);
    return ((static_cast<std::size_t>(p) * n + q) * n + r) * n + s;
  }
};

SpatialIntegrals parse_fcidump(std::istream& in);
SpatialIntegrals parse_fcidump(const std::string& text);
SpatialIntegrals read_fcidump(const std::filesystem::path& path);
std::string write_fcidump(const SpatialIntegrals& ints, double tol = 0.0);

// New orbitals are the columns of c.
SpatialIntegrals transform_integrals(const SpatialIntegrals& ints, const Eigen::MatrixXd& c);

FermionHamiltonian assemble_hamiltonian(const SpatialIntegrals& ints);

}  // namespace gcim
