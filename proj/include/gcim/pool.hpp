#pragma once

#include <array>
#include <string>
#include <vector>

#include "gcim/fermion.hpp"
#include "gcim/statevector.hpp"

namespace gcim {

enum class OperatorKind { Single, DoubleSinglet, DoubleTriplet };

const char* to_string(OperatorKind k);

// Spin-adapted generator T = E − E†. `excitation` holds E in normal order with
// unit 2-norm coefficient vector; `generator` and `qubit` hold T.
struct PoolOperator {
  OperatorKind kind = OperatorKind::Single;
  std::array<int, 4> spatial{-1, -1, -1, -1};  // (p, q) for singles
  FermionOperator excitation;
  FermionOperator generator;
  PauliSum qubit;
  std::string label;
};

// E before normalization, straight from the spatial indices. Singles: a†_p a_q per spin.
// Doubles: creation on (p, q), annihilation on (r, s) in the singlet or triplet spin pattern.
FermionOperator spin_adapted_excitation(OperatorKind kind, const std::array<int, 4>& spatial,
                                        int n_spatial);

// Singles over p > q, then doubles over p ≤ q, r ≤ s, (p,q) < (r,s), singlet before
// triplet; zero operators skipped.
std::vector<PoolOperator> build_pool(int n_spatial);

// [H, A] as a simplified PauliSum.
PauliSum pool_gradient_operator(const PoolOperator& op, const PauliSum& h);

std::vector<CompiledGenerator> compile_pool(const std::vector<PoolOperator>& pool);

}  // namespace gcim
