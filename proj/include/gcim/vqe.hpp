#pragma once

#include <vector>

#include "gcim/bfgs.hpp"
#include "gcim/subspace.hpp"

namespace gcim {

// Parameters of a recipe in factor order.
Eigen::VectorXd recipe_angles(const BasisRecipe& recipe);
BasisRecipe with_angles(BasisRecipe recipe, const Eigen::VectorXd& theta);

struct AnsatzValue {
  double energy = 0.0;
  Eigen::VectorXd gradient;  // ∂E/∂θ_j per factor
  StateVector state;
};

// E(θ) = ⟨ψ(θ)|H|ψ(θ)⟩ with ψ(θ) = ∏_j exp(θ_j A_j)|ref⟩ and its exact gradient
// by one backward sweep: ∂E/∂θ_j = 2 Re⟨U_{j-1}†…U_1† Hψ | A_j U_j…U_K ref⟩.
AnsatzValue ansatz_energy_gradient(const BasisRecipe& recipe, const Problem& problem);

struct VqeResult {
  BasisRecipe recipe;  // θ*
  double energy = 0.0;
  StateVector state;
  int rounds = 0;
  BfgsStatus status = BfgsStatus::Converged;
};

// Minimizes E over all angles of `recipe`, starting from its stored angles.
VqeResult vqe_minimize(const BasisRecipe& recipe, const Problem& problem, int max_rounds = 200);

// Every pool operator once, pool index 0 acting first, all angles zero.
BasisRecipe uccsd_recipe(const Problem& problem);

struct TranslateResult {
  BasisRecipe recipe;  // θ*
  double deficit = 1.0;
  double energy = 0.0;
  int rounds = 0;
  BfgsStatus status = BfgsStatus::Converged;
};

// Minimizes 1 − |⟨target|ψ(θ)⟩|² over the angles of `ansatz`.
TranslateResult ucc_translate(const StateVector& target, const BasisRecipe& ansatz,
                              const Problem& problem, int max_rounds = 200);

}  // namespace gcim
