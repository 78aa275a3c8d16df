#pragma once

#include <vector>

#include "gcim/fcidump.hpp"
#include "gcim/pool.hpp"
#include "gcim/statevector.hpp"

namespace gcim {

// Everything an adaptive run reads; immutable once built.
struct Problem {
  int n_qubits = 0;
  int n_alpha = 0;
  int n_beta = 0;
  PauliSum hamiltonian;
  SparseMatrixXc h_matrix;
  std::vector<PoolOperator> pool;
  std::vector<CompiledGenerator> generators;
  StateVector reference;
  double reference_energy = 0.0;

  std::size_t pool_size() const { return pool.size(); }
  double energy(const StateVector& v) const { return v.dot(h_matrix * v).real(); }
};

Problem make_problem(const PauliSum& h, int n_alpha, int n_beta);
Problem make_problem(const SpatialIntegrals& ints);

}  // namespace gcim
