#include "gcim/adapt.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "gcim/errors.hpp"
#include "gcim/parallel.hpp"
#include "gcim/spectrum.hpp"

namespace gcim {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Algo {
  Algorithm a;
  const char* name;
};

constexpr Algo kAlgorithms[] = {{Algorithm::AdaptGcim, "adapt-gcim"},
                                {Algorithm::AdaptVqe, "adapt-vqe"},
                                {Algorithm::AdaptVqeGcim, "adapt-vqe-gcim"},
                                {Algorithm::AdaptVqeGcimOneShot, "adapt-vqe-gcim-1"},
                                {Algorithm::AdaptGcimMn, "adapt-gcim-mn"}};

SubspaceSolution solve(const SubspaceBasis& basis, const AdaptConfig& config) {
  return config.solver == SubspaceSolver::Orthonormal ? basis.solve_orthonormal()
                                                      : basis.solve_gevp(config.s_threshold);
}

void record_solution(AdaptTrace& trace, const SubspaceBasis& basis, SubspaceSolution r) {
  trace.final_energy = r.eigenvalues(0);
  trace.eigenvalues = std::move(r.eigenvalues);
  trace.final_state = std::move(r.ground_state);
  trace.basis = basis.recipes();
}

BasisRecipe prepend(const BasisRecipe& tail, Rotation head) {
  BasisRecipe r;
  r.factors.reserve(tail.size() + 1);
  r.factors.push_back(head);
  r.factors.insert(r.factors.end(), tail.factors.begin(), tail.factors.end());
  return r;
}

double abs_sum(const std::vector<double>& g) {
  double s = 0.0;
  for (double v : g) s += std::abs(v);
  return s;
}

// Consecutive small-change counter for the ADAPT-GCIM stop rule.
struct StallRule {
  double previous;
  int streak = 0;

  bool update(double energy, std::size_t unselected, const AdaptConfig& c) {
    streak = std::abs(energy - previous) < c.gcim_tol ? streak + 1 : 0;
    previous = energy;
    const int t_auto = static_cast<int>(std::ceil(0.2 * static_cast<double>(unselected)));
    const int t = std::max(1, std::min(t_auto, c.t_usr));
    return !c.exhaust_pool && streak >= t;
  }
};

// Shared body of ADAPT-GCIM and its (m, n) variant; optimize_every = 0 disables optimization.
AdaptTrace gcim_loop(const Problem& problem, const AdaptConfig& config, Algorithm tag,
                     int optimize_every, int round_cap) {
  config.validate();
  AdaptTrace trace;
  trace.algorithm = tag;
  SubspaceBasis basis(&problem.h_matrix);
  std::set<std::size_t> excluded;
  BasisRecipe product;
  StateVector surrogate = problem.reference;
  StallRule stall{problem.reference_energy};
  trace.stop_reason = "max-iterations";

  for (int k = 1; k <= config.max_iterations; ++k) {
    IterationRecord rec;
    rec.iteration = k;
    auto t0 = Clock::now();
    Selection sel = select_operator(surrogate, problem, excluded);
    rec.gradient_seconds = seconds_since(t0);
    t0 = Clock::now();
    excluded.insert(sel.index);

    const bool optimize = optimize_every > 0 && round_cap > 0 && k % optimize_every == 0;
    product = prepend(product, {sel.index, config.theta_init});
    if (optimize) {
      VqeResult v = vqe_minimize(product, problem, round_cap);
      product = v.recipe;
      surrogate = v.state;
      rec.rounds = v.rounds;
      trace.total_rounds += v.rounds;
    } else {
      surrogate = exp_apply(problem.generators[sel.index], config.theta_init, surrogate);
    }

    if (k == 1 && basis.add(BasisRecipe{}, problem.reference)) rec.added.push_back(BasisRecipe{});
    const BasisRecipe single{{product.factors.front()}};
    if (basis.add(single, problem)) rec.added.push_back(single);
    if (basis.add(product, surrogate)) rec.added.push_back(product);

    SubspaceSolution r = solve(basis, config);
    rec.energy_seconds = seconds_since(t0);
    rec.selected = sel.index;
    rec.label = problem.pool[sel.index].label;
    rec.gradient_norm_sum = abs_sum(sel.gradients);
    rec.gradients = std::move(sel.gradients);
    rec.energy = r.eigenvalues(0);
    rec.subspace_dim = basis.size();
    rec.kept_dim = r.kept_dim;
    rec.ansatz = product;
    trace.iterations.push_back(std::move(rec));
    record_solution(trace, basis, std::move(r));

    const std::size_t unselected = problem.pool_size() - excluded.size();
    if (stall.update(trace.final_energy, unselected, config)) {
      trace.converged = true;
      trace.stop_reason = "energy-converged";
      break;
    }
    if (unselected == 0) {
      trace.converged = true;
      trace.stop_reason = "pool-exhausted";
      break;
    }
  }
  return trace;
}

// ADAPT-VQE with an optional per-iteration subspace step.
AdaptTrace vqe_loop(const Problem& problem, const AdaptConfig& config, Algorithm tag,
                    bool subspace_each_iteration) {
  config.validate();
  AdaptTrace trace;
  trace.algorithm = tag;
  SubspaceBasis basis(&problem.h_matrix);
  BasisRecipe ansatz;
  StateVector psi = problem.reference;
  double energy = problem.reference_energy;
  trace.stop_reason = "max-iterations";
  trace.final_energy = energy;
  trace.final_state = psi;

  for (int k = 1;; ++k) {
    auto t0 = Clock::now();
    Selection sel = select_operator(psi, problem);
    const double gsum = abs_sum(sel.gradients);
    const double gradient_seconds = seconds_since(t0);
    if (gsum < config.vqe_grad_tol) {
      trace.converged = true;
      trace.stop_reason = "gradient-converged";
      break;
    }
    if (k > config.max_iterations) break;

    IterationRecord rec;
    rec.iteration = k;
    rec.gradient_seconds = gradient_seconds;
    t0 = Clock::now();
    VqeResult v = vqe_minimize(prepend(ansatz, {sel.index, 0.0}), problem, config.optimizer_rounds);
    ansatz = v.recipe;
    psi = v.state;
    energy = v.energy;
    rec.rounds = v.rounds;
    trace.total_rounds += v.rounds;
    rec.energy = energy;
    rec.vqe_energy = energy;

    if (subspace_each_iteration) {
      if (k == 1 && basis.add(BasisRecipe{}, problem.reference)) rec.added.push_back(BasisRecipe{});
      const BasisRecipe single{{ansatz.factors.front()}};
      if (basis.add(single, problem)) rec.added.push_back(single);
      if (basis.add(ansatz, psi)) rec.added.push_back(ansatz);
      SubspaceSolution r = solve(basis, config);
      if (r.eigenvalues(0) > energy + 1e-10)
        throw ContractViolation("subspace energy exceeds the VQE energy it contains");
      rec.energy = r.eigenvalues(0);
      rec.kept_dim = r.kept_dim;
      record_solution(trace, basis, std::move(r));
      trace.vqe_energy = energy;
    } else {
      trace.final_energy = energy;
      trace.eigenvalues = Eigen::VectorXd::Constant(1, energy);
      trace.final_state = psi;
      trace.basis = {ansatz};
      rec.kept_dim = 1;
    }
    rec.energy_seconds = seconds_since(t0);
    rec.selected = sel.index;
    rec.label = problem.pool[sel.index].label;
    rec.gradient_norm_sum = gsum;
    rec.gradients = std::move(sel.gradients);
    rec.subspace_dim = subspace_each_iteration ? basis.size() : 1;
    rec.ansatz = ansatz;
    trace.iterations.push_back(std::move(rec));
  }
  if (trace.iterations.empty()) {
    trace.eigenvalues = Eigen::VectorXd::Constant(1, energy);
    trace.basis = {BasisRecipe{}};
  }
  return trace;
}

}  // namespace

const char* to_string(Algorithm a) {
  for (const auto& e : kAlgorithms)
    if (e.a == a) return e.name;
  return "unknown";
}

Algorithm parse_algorithm(const std::string& name) {
  for (const auto& e : kAlgorithms)
    if (name == e.name) return e.a;
  throw ConfigError("unknown algorithm '" + name + "'");
}

void AdaptConfig::validate() const {
  if (!(gcim_tol > 0) || !(vqe_grad_tol > 0) || !(s_threshold > 0))
    throw ConfigError("tolerances must be positive");
  if (t_usr < 1) throw ConfigError("t_usr must be at least 1");
  if (max_iterations < 1) throw ConfigError("max_iterations must be at least 1");
  if (m < 1) throw ConfigError("m must be at least 1");
  if (n < 0) throw ConfigError("n must be non-negative");
  if (optimizer_rounds < 0) throw ConfigError("optimizer_rounds must be non-negative");
  if (!std::isfinite(theta_init)) throw ConfigError("theta_init must be finite");
}

Selection select_operator(const StateVector& surrogate, const Problem& problem,
                          const std::set<std::size_t>& excluded) {
  const std::size_t n = problem.pool_size();
  Selection out;
  out.gradients.assign(n, 0.0);
  const StateVector sigma = problem.h_matrix * surrogate;
  parallel_for(n, [&](std::size_t l) {
    out.gradients[l] = 2.0 * sigma.dot(problem.generators[l].matrix * surrogate).real();
  });
  bool found = false;
  double best = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    if (excluded.count(l)) continue;
    const double g = std::abs(out.gradients[l]);
    if (!found || g > best + 1e-12 * std::max(1.0, best)) {
      best = g;
      out.index = l;
      found = true;
    }
  }
  if (!found) throw EmptySubspaceError("no selectable operator in the pool");
  return out;
}

ExactReference exact_reference(const Problem& problem) {
  const Sector sector{problem.n_alpha, problem.n_beta, problem.n_alpha == problem.n_beta};
  const ExactSpectrum sp = exact_spectrum(problem.hamiltonian, 1, sector);
  return {sp.eigenvalues(0), sp.ground_state};
}

void attach_exact(AdaptTrace& trace, const ExactReference& exact) {
  trace.exact_energy = exact.energy;
  trace.error = std::abs(trace.final_energy - exact.energy);
  if (trace.final_state.size() == exact.state.size())
    trace.overlap_deficit = overlap_deficit(exact.state, trace.final_state);
}

AdaptTrace run_adapt_gcim(const Problem& problem, const AdaptConfig& config) {
  return gcim_loop(problem, config, Algorithm::AdaptGcim, 0, 0);
}

AdaptTrace run_adapt_gcim_mn(const Problem& problem, const AdaptConfig& config) {
  return gcim_loop(problem, config, Algorithm::AdaptGcimMn, config.m, config.n);
}

AdaptTrace run_adapt_vqe(const Problem& problem, const AdaptConfig& config) {
  return vqe_loop(problem, config, Algorithm::AdaptVqe, false);
}

AdaptTrace run_adapt_vqe_gcim(const Problem& problem, const AdaptConfig& config) {
  return vqe_loop(problem, config, Algorithm::AdaptVqeGcim, true);
}

AdaptTrace run_adapt_vqe_gcim_one_shot(const Problem& problem, const AdaptConfig& config) {
  AdaptTrace trace = vqe_loop(problem, config, Algorithm::AdaptVqeGcimOneShot, false);
  const BasisRecipe ansatz = trace.basis.front();
  const StateVector psi = trace.final_state;
  trace.vqe_energy = trace.final_energy;
  if (ansatz.empty()) return trace;
  SubspaceBasis basis(&problem.h_matrix);
  for (const auto& f : ansatz.factors) {
    const BasisRecipe single{{f}};
    basis.append(single, prepare_state(single, problem));
  }
  basis.append(ansatz, psi);
  record_solution(trace, basis, solve(basis, config));
  return trace;
}

AdaptTrace run_adapt(const Problem& problem, const AdaptConfig& config) {
  switch (config.algorithm) {
    case Algorithm::AdaptGcim: return run_adapt_gcim(problem, config);
    case Algorithm::AdaptVqe: return run_adapt_vqe(problem, config);
    case Algorithm::AdaptVqeGcim: return run_adapt_vqe_gcim(problem, config);
    case Algorithm::AdaptVqeGcimOneShot: return run_adapt_vqe_gcim_one_shot(problem, config);
    default: return run_adapt_gcim_mn(problem, config);
  }
}

double gcim_energy_gradient(const std::vector<BasisRecipe>& basis, const GevpResult<Complex>& result,
                            const Problem& problem, std::size_t s, Eigen::Index k) {
  if (s >= problem.pool_size()) throw RangeError("parameter index beyond the pool");
  if (k < 0 || k >= result.eigenvalues.size()) throw RangeError("eigenvalue index beyond the spectrum");
  const auto m = static_cast<Eigen::Index>(basis.size());
  if (result.eigenvectors.rows() != m) throw ShapeError("basis size does not match the eigenvectors");

  std::vector<StateVector> psi(basis.size()), dpsi(basis.size());
  std::vector<bool> touched(basis.size(), false);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& fs = basis[i].factors;
    std::vector<StateVector> suffix(fs.size() + 1);  // suffix[j] = U_j … U_K |ref⟩
    suffix[fs.size()] = problem.reference;
    for (std::size_t j = fs.size(); j-- > 0;)
      suffix[j] = exp_apply(problem.generators.at(fs[j].op), fs[j].theta, suffix[j + 1]);
    psi[i] = suffix[0];
    dpsi[i] = StateVector::Zero(psi[i].size());
    for (std::size_t j = 0; j < fs.size(); ++j) {
      if (fs[j].op != s) continue;
      touched[i] = true;
      StateVector v = problem.generators[s].matrix * suffix[j];
      for (std::size_t l = j; l-- > 0;) v = exp_apply(problem.generators[fs[l].op], fs[l].theta, v);
      dpsi[i] += v;
    }
  }

  std::vector<StateVector> hpsi(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) hpsi[i] = problem.h_matrix * psi[i];
  MatrixXc h(m, m), sm(m, m), dh = MatrixXc::Zero(m, m), ds = MatrixXc::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto a = static_cast<std::size_t>(i), b = static_cast<std::size_t>(j);
      h(i, j) = psi[a].dot(hpsi[b]);
      sm(i, j) = psi[a].dot(psi[b]);
      if (!touched[a] && !touched[b]) continue;
      if (i == j) {
        dh(i, i) = 2.0 * hpsi[a].dot(dpsi[a]).real();
        continue;
      }
      dh(i, j) = dpsi[a].dot(hpsi[b]) + hpsi[a].dot(dpsi[b]);
      ds(i, j) = dpsi[a].dot(psi[b]) + psi[a].dot(dpsi[b]);
    }

  const Eigen::VectorXcd f = result.eigenvectors.col(k).normalized();
  const Complex hf = f.dot(h * f), sf = f.dot(sm * f);
  const Complex dhf = f.dot(dh * f), dsf = f.dot(ds * f);
  return ((dhf * sf - hf * dsf) / (sf * sf)).real();
}

}  // namespace gcim
