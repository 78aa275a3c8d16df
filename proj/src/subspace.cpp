#include "gcim/subspace.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "gcim/errors.hpp"

namespace gcim {

std::uint64_t BasisRecipe::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xffU;
      h *= 1099511628211ULL;
    }
  };
  for (const auto& f : factors) {
    mix(f.op);
    mix(std::bit_cast<std::uint64_t>(f.theta == 0.0 ? 0.0 : f.theta));
  }
  return h;
}

StateVector prepare_state(const BasisRecipe& recipe, const std::vector<CompiledGenerator>& gens,
                          const StateVector& reference) {
  StateVector v = reference;
  for (auto it = recipe.factors.rbegin(); it != recipe.factors.rend(); ++it) {
    if (it->op >= gens.size()) throw RangeError("recipe names a pool index beyond the pool");
    v = exp_apply(gens[it->op], it->theta, v);
  }
  return v;
}

StateVector prepare_state(const BasisRecipe& recipe, const Problem& problem) {
  return prepare_state(recipe, problem.generators, problem.reference);
}

bool SubspaceBasis::add(const BasisRecipe& recipe, const StateVector& state) {
  if (seen_.count(recipe)) return false;
  append(recipe, state);
  return true;
}

bool SubspaceBasis::add(const BasisRecipe& recipe, const Problem& problem) {
  if (seen_.count(recipe)) return false;
  append(recipe, prepare_state(recipe, problem));
  return true;
}

void SubspaceBasis::append(const BasisRecipe& recipe, const StateVector& state) {
  if (h_ == nullptr) throw ContractViolation("subspace basis has no Hamiltonian");
  if (state.size() != h_->cols()) throw ShapeError("state length does not match H");
  seen_.insert(recipe);
  recipes_.push_back(recipe);
  states_.push_back(state);
  sigma_.push_back(*h_ * state);

  const auto m = static_cast<Eigen::Index>(states_.size());
  hmat_.conservativeResize(m, m);
  smat_.conservativeResize(m, m);
  const Eigen::Index j = m - 1;
  for (Eigen::Index i = 0; i <= j; ++i) {
    hmat_(i, j) = states_[i].dot(sigma_[j]);
    smat_(i, j) = states_[i].dot(states_[j]);
    hmat_(j, i) = std::conj(hmat_(i, j));
    smat_(j, i) = std::conj(smat_(i, j));
  }
  hmat_(j, j) = hmat_(j, j).real();
  smat_(j, j) = smat_(j, j).real();

  StateVector w = state;
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& q : q_) w -= q.dot(w) * q;
  if (w.norm() <= drop_tol_ * state.norm()) return;
  w.normalize();
  q_.push_back(w);
  hq_.push_back(*h_ * w);
  const auto l = static_cast<Eigen::Index>(q_.size());
  qh_.conservativeResize(l, l);
  for (Eigen::Index i = 0; i < l; ++i) {
    qh_(i, l - 1) = q_[static_cast<std::size_t>(i)].dot(hq_.back());
    qh_(l - 1, i) = std::conj(qh_(i, l - 1));
  }
  qh_(l - 1, l - 1) = qh_(l - 1, l - 1).real();
}

SubspaceSolution SubspaceBasis::solve_orthonormal() const {
  if (q_.empty()) throw EmptySubspaceError("basis is empty");
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(qh_);
  SubspaceSolution out;
  out.eigenvalues = es.eigenvalues();
  out.kept_dim = static_cast<Eigen::Index>(q_.size());
  out.ground_state = StateVector::Zero(q_.front().size());
  for (std::size_t i = 0; i < q_.size(); ++i)
    out.ground_state += es.eigenvectors()(static_cast<Eigen::Index>(i), 0) * q_[i];
  out.ground_state.normalize();
  return out;
}

SubspaceSolution SubspaceBasis::solve_gevp(double threshold) const {
  if (states_.empty()) throw EmptySubspaceError("basis is empty");
  const GevpResult<Complex> r = gcim::solve_gevp(hmat_, smat_, threshold);
  return {r.eigenvalues, r.kept_dim, reconstruct_state(r, states_, 0)};
}

ProjectedMatrices build_matrices(const std::vector<StateVector>& states, const SparseMatrixXc& h) {
  if (states.empty()) throw EmptySubspaceError("basis is empty");
  const auto m = static_cast<Eigen::Index>(states.size());
  ProjectedMatrices out{MatrixXc(m, m), MatrixXc(m, m)};
  for (Eigen::Index j = 0; j < m; ++j) {
    const StateVector sigma = h * states[j];
    for (Eigen::Index i = 0; i <= j; ++i) {
      out.h(i, j) = states[i].dot(sigma);
      out.s(i, j) = states[i].dot(states[j]);
      out.h(j, i) = std::conj(out.h(i, j));
      out.s(j, i) = std::conj(out.s(i, j));
    }
    out.h(j, j) = out.h(j, j).real();
    out.s(j, j) = out.s(j, j).real();
  }
  return out;
}

ProjectedMatrices build_matrices(const std::vector<StateVector>& states, const PauliSum& h) {
  return build_matrices(states, to_sparse(h));
}

StateVector reconstruct_state(const GevpResult<Complex>& result,
                              const std::vector<StateVector>& states, Eigen::Index which) {
  if (which < 0 || which >= result.eigenvalues.size())
    throw RangeError("eigenvector index beyond the kept spectrum");
  if (static_cast<Eigen::Index>(states.size()) != result.eigenvectors.rows())
    throw ShapeError("basis size does not match the eigenvector length");
  StateVector v = StateVector::Zero(states.front().size());
  for (std::size_t j = 0; j < states.size(); ++j)
    v += result.eigenvectors(static_cast<Eigen::Index>(j), which) * states[j];
  return v.normalized();
}

double overlap_deficit(const StateVector& a, const StateVector& b) {
  if (a.size() != b.size()) throw ShapeError("state lengths differ");
  return std::clamp(1.0 - std::norm(a.dot(b)), 0.0, 1.0);
}

std::vector<StateVector> orthogonalize_basis(const std::vector<StateVector>& states,
                                             double drop_tol) {
  std::vector<StateVector> out;
  for (const auto& s : states) {
    StateVector w = s;
    const double start = w.norm();
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : out) w -= q.dot(w) * q;
    if (w.norm() < drop_tol * std::max(1.0, start)) continue;
    out.push_back(w.normalized());
  }
  return out;
}

std::vector<double> excitation_energies(const GevpResult<Complex>& result) {
  if (result.eigenvalues.size() < 2) throw RangeError("need at least two eigenvalues");
  std::vector<double> out;
  for (Eigen::Index k = 1; k < result.eigenvalues.size(); ++k)
    out.push_back((result.eigenvalues(k) - result.eigenvalues(0)) * kHartreeToEv);
  return out;
}

}  // namespace gcim
