#pragma once

#include <vector>

#include "gcim/pauli.hpp"
#include "gcim/types.hpp"

namespace gcim {

enum class Spin { Up, Down };

// Interleaved ordering: spatial g maps to 2g (up) and 2g+1 (down).
constexpr int spin_orbital(int spatial, Spin s) noexcept {
  return 2 * spatial + (s == Spin::Down ? 1 : 0);
}
constexpr int spatial_of(int spin_orb) noexcept { return spin_orb / 2; }
constexpr Spin spin_of(int spin_orb) noexcept { return spin_orb % 2 ? Spin::Down : Spin::Up; }

// coefficient · a†_{c0} a†_{c1} … a_{a0} a_{a1} …
struct FermionTerm {
  Complex coefficient{1.0, 0.0};
  std::vector<int> creation;
  std::vector<int> annihilation;

  FermionTerm adjoint() const;
  friend bool operator==(const FermionTerm&, const FermionTerm&) = default;
};

struct FermionOperator {
  int n_modes = 0;
  Complex constant{};
  std::vector<FermionTerm> terms;

  FermionOperator adjoint() const;
  FermionOperator& operator+=(const FermionOperator& o);
  FermionOperator& operator-=(const FermionOperator& o);
  FermionOperator& operator*=(Complex c);
};

using FermionHamiltonian = FermionOperator;

// Creation and annihilation blocks each sorted descending with the permutation
// sign applied; repeated modes vanish; equal keys merge; |c| < tol dropped.
FermionOperator normal_ordered(const FermionOperator& op, double tol = 1e-14);

// Every term has its conjugate-transpose partner with conjugate coefficient.
bool is_conjugate_closed(const FermionOperator& op, double tol = 1e-12);

PauliSum ladder_operator(int mode, bool dagger, int n_qubits);
PauliSum jordan_wigner(const FermionTerm& term, int n_qubits);
PauliSum jordan_wigner(const FermionOperator& op, int n_qubits);
PauliSum jordan_wigner(const FermionOperator& op);

// Number, S_z and S² as qubit operators over n_spatial orbitals.
PauliSum number_operator(int n_spatial);
PauliSum sz_operator(int n_spatial);
PauliSum s_squared_operator(int n_spatial);

}  // namespace gcim
