#pragma once

#include <cstdint>

#include "gcim/pauli.hpp"
#include "gcim/types.hpp"

namespace gcim {

// Throws ShapeError unless v.size() is a power of two.
int qubit_count(const StateVector& v);

StateVector basis_state(int n_qubits, std::uint64_t index);

// Occupies up orbitals 0,2,… and down orbitals 1,3,…
StateVector hf_state(int n_qubits, int n_alpha, int n_beta);
std::uint64_t hf_index(int n_qubits, int n_alpha, int n_beta);

// P·v for one Pauli string.
StateVector apply_pauli(const PauliString& p, const StateVector& v);

// Term-by-term h·v; no matrix is formed.
StateVector apply_paulisum(const PauliSum& h, const StateVector& v);

// ⟨bra|h|ket⟩.
Complex expectation(const StateVector& bra, const PauliSum& h, const StateVector& ket);

// exp(θA)v for anti-Hermitian A.
StateVector exp_apply(const PauliSum& a, double theta, const StateVector& v);

// Pre-assembled anti-Hermitian generator; norm_bound ≥ ‖A‖₂.
struct CompiledGenerator {
  SparseMatrixXc matrix;
  double norm_bound = 0.0;
};

CompiledGenerator compile_generator(const PauliSum& a);
StateVector exp_apply(const CompiledGenerator& a, double theta, const StateVector& v);

}  // namespace gcim
