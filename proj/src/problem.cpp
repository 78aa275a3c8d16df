#include "gcim/problem.hpp"

#include "gcim/errors.hpp"

namespace gcim {

Problem make_problem(const PauliSum& h, int n_alpha, int n_beta) {
  if (!h.is_hermitian(1e-12)) throw ContractViolation("Hamiltonian is not Hermitian");
  if (h.n_qubits() % 2) throw ShapeError("interleaved spin orbitals need an even qubit count");
  Problem p;
  p.n_qubits = h.n_qubits();
  p.n_alpha = n_alpha;
  p.n_beta = n_beta;
  p.hamiltonian = h;
  p.h_matrix = to_sparse(h);
  p.pool = build_pool(p.n_qubits / 2);
  p.generators = compile_pool(p.pool);
  p.reference = hf_state(p.n_qubits, n_alpha, n_beta);
  p.reference_energy = p.energy(p.reference);
  return p;
}

Problem make_problem(const SpatialIntegrals& ints) {
  ints.validate(1e-10);
  return make_problem(jordan_wigner(assemble_hamiltonian(ints)), ints.n_alpha(), ints.n_beta());
}

}  // namespace gcim
