#pragma once

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "gcim/gevp.hpp"
#include "gcim/problem.hpp"

namespace gcim {

struct Rotation {
  std::size_t op = 0;
  double theta = 0.0;
  friend bool operator==(const Rotation&, const Rotation&) = default;
};

// Operator-product order: factors.front() is leftmost, factors.back() acts first on the reference.
struct BasisRecipe {
  std::vector<Rotation> factors;

  bool empty() const { return factors.empty(); }
  std::size_t size() const { return factors.size(); }
  std::uint64_t hash() const;
  friend bool operator==(const BasisRecipe&, const BasisRecipe&) = default;
};

struct RecipeHash {
  std::size_t operator()(const BasisRecipe& r) const { return static_cast<std::size_t>(r.hash()); }
};

StateVector prepare_state(const BasisRecipe& recipe, const std::vector<CompiledGenerator>& gens,
                          const StateVector& reference);
StateVector prepare_state(const BasisRecipe& recipe, const Problem& problem);

struct SubspaceSolution {
  Eigen::VectorXd eigenvalues;  // ascending
  Eigen::Index kept_dim = 0;
  StateVector ground_state;     // normalized
};

// Generating functions with cached |ψ_i⟩ and H|ψ_i⟩, plus incrementally grown H and S.
// An orthonormal frame Q of the same span is grown alongside by two-pass Gram-Schmidt
// on the statevectors; vectors whose residual falls below drop_tol·‖ψ‖ add no column.
class SubspaceBasis {
 public:
  SubspaceBasis() = default;
  explicit SubspaceBasis(const SparseMatrixXc* h, double drop_tol = 1e-10)
      : h_(h), drop_tol_(drop_tol) {}

  // False when the recipe is already present.
  bool add(const BasisRecipe& recipe, const StateVector& state);
  bool add(const BasisRecipe& recipe, const Problem& problem);
  // Appends without deduplication.
  void append(const BasisRecipe& recipe, const StateVector& state);

  std::size_t size() const { return states_.size(); }
  bool empty() const { return states_.empty(); }
  const std::vector<BasisRecipe>& recipes() const { return recipes_; }
  const std::vector<StateVector>& states() const { return states_; }
  const MatrixXc& h_matrix() const { return hmat_; }
  const MatrixXc& s_matrix() const { return smat_; }
  const std::vector<StateVector>& frame() const { return q_; }
  const MatrixXc& frame_h() const { return qh_; }

  // Eigenpairs of Q†HQ. Adding vectors only extends Q, so the lowest eigenvalue
  // never increases beyond eigensolver roundoff.
  SubspaceSolution solve_orthonormal() const;
  // Hf = εSf by canonical orthogonalization of S.
  SubspaceSolution solve_gevp(double threshold) const;

 private:
  const SparseMatrixXc* h_ = nullptr;
  std::vector<BasisRecipe> recipes_;
  std::vector<StateVector> states_;
  std::vector<StateVector> sigma_;
  std::unordered_set<BasisRecipe, RecipeHash> seen_;
  MatrixXc hmat_;
  MatrixXc smat_;
  double drop_tol_ = 1e-10;
  std::vector<StateVector> q_;
  std::vector<StateVector> hq_;
  MatrixXc qh_;
};

struct ProjectedMatrices {
  MatrixXc h;
  MatrixXc s;
};

// Upper triangle computed, lower mirrored.
ProjectedMatrices build_matrices(const std::vector<StateVector>& states, const PauliSum& h);
ProjectedMatrices build_matrices(const std::vector<StateVector>& states, const SparseMatrixXc& h);

// Normalized Σ_j f_j|ψ_j⟩ for eigenpair `which`.
StateVector reconstruct_state(const GevpResult<Complex>& result,
                              const std::vector<StateVector>& states, Eigen::Index which);

// 1 − |⟨a|b⟩|², clamped to [0, 1].
double overlap_deficit(const StateVector& a, const StateVector& b);

// Modified Gram-Schmidt, two passes; residuals below drop_tol are discarded.
std::vector<StateVector> orthogonalize_basis(const std::vector<StateVector>& states,
                                             double drop_tol = 1e-10);

// (ε_k − ε_0) in eV for k ≥ 1.
std::vector<double> excitation_energies(const GevpResult<Complex>& result);

}  // namespace gcim
