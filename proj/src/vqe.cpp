#include "gcim/vqe.hpp"

#include <cmath>

#include "gcim/errors.hpp"

namespace gcim {

namespace {

const CompiledGenerator& generator(const Problem& problem, std::size_t op) {
  if (op >= problem.generators.size()) throw RangeError("recipe names a pool index beyond the pool");
  return problem.generators[op];
}

// Returns ⟨λ_j|A_j φ_j⟩ per factor, where φ_1 = ψ, λ_1 = seed, and both are
// pulled back through U_j† after each factor.
Eigen::VectorXcd adjoint_sweep(const BasisRecipe& recipe, const Problem& problem, StateVector phi,
                               StateVector lambda) {
  const auto k = static_cast<Eigen::Index>(recipe.size());
  Eigen::VectorXcd out(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const auto& f = recipe.factors[static_cast<std::size_t>(j)];
    const auto& g = generator(problem, f.op);
    out(j) = lambda.dot(g.matrix * phi);
    if (j + 1 == k) break;
    phi = exp_apply(g, -f.theta, phi);
    lambda = exp_apply(g, -f.theta, lambda);
  }
  return out;
}

}  // namespace

Eigen::VectorXd recipe_angles(const BasisRecipe& recipe) {
  Eigen::VectorXd t(static_cast<Eigen::Index>(recipe.size()));
  for (std::size_t j = 0; j < recipe.size(); ++j)
    t(static_cast<Eigen::Index>(j)) = recipe.factors[j].theta;
  return t;
}

BasisRecipe with_angles(BasisRecipe recipe, const Eigen::VectorXd& theta) {
  if (theta.size() != static_cast<Eigen::Index>(recipe.size()))
    throw ShapeError("angle count does not match the recipe");
  for (std::size_t j = 0; j < recipe.size(); ++j)
    recipe.factors[j].theta = theta(static_cast<Eigen::Index>(j));
  return recipe;
}

AnsatzValue ansatz_energy_gradient(const BasisRecipe& recipe, const Problem& problem) {
  AnsatzValue out;
  out.state = prepare_state(recipe, problem);
  StateVector sigma = problem.h_matrix * out.state;
  out.energy = out.state.dot(sigma).real();
  out.gradient = 2.0 * adjoint_sweep(recipe, problem, out.state, std::move(sigma)).real();
  return out;
}

VqeResult vqe_minimize(const BasisRecipe& recipe, const Problem& problem, int max_rounds) {
  if (recipe.empty()) throw ContractViolation("VQE needs at least one rotation");
  const Objective f = [&](const Eigen::VectorXd& theta, Eigen::VectorXd& g) {
    AnsatzValue v = ansatz_energy_gradient(with_angles(recipe, theta), problem);
    g = v.gradient;
    return v.energy;
  };
  BfgsOptions opts;
  opts.max_rounds = max_rounds;
  const BfgsResult r = bfgs_minimize(f, recipe_angles(recipe), opts);
  VqeResult out;
  out.recipe = with_angles(recipe, r.x);
  out.state = prepare_state(out.recipe, problem);
  out.energy = problem.energy(out.state);
  out.rounds = r.rounds;
  out.status = r.status;
  return out;
}

BasisRecipe uccsd_recipe(const Problem& problem) {
  BasisRecipe r;
  for (std::size_t k = problem.pool_size(); k-- > 0;) r.factors.push_back({k, 0.0});
  return r;
}

TranslateResult ucc_translate(const StateVector& target, const BasisRecipe& ansatz,
                              const Problem& problem, int max_rounds) {
  if (target.size() != problem.reference.size()) throw ShapeError("target length does not match H");
  if (std::abs(target.norm() - 1.0) > 1e-8) throw ContractViolation("target is not normalized");
  const Objective f = [&](const Eigen::VectorXd& theta, Eigen::VectorXd& g) {
    const BasisRecipe r = with_angles(ansatz, theta);
    const StateVector psi = prepare_state(r, problem);
    const Complex o = target.dot(psi);
    if (r.empty()) {
      g.resize(0);
    } else {
      g = -2.0 * (std::conj(o) * adjoint_sweep(r, problem, psi, target).array()).real().matrix();
    }
    return std::clamp(1.0 - std::norm(o), 0.0, 1.0);
  };
  BfgsOptions opts;
  opts.max_rounds = max_rounds;
  const BfgsResult r = bfgs_minimize(f, recipe_angles(ansatz), opts);
  TranslateResult out;
  out.recipe = with_angles(ansatz, r.x);
  const StateVector psi = prepare_state(out.recipe, problem);
  out.deficit = overlap_deficit(target, psi);
  out.energy = problem.energy(psi);
  out.rounds = r.rounds;
  out.status = r.status;
  return out;
}

}  // namespace gcim
