#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gcim/subspace.hpp"
#include "gcim/vqe.hpp"

namespace gcim {

enum class Algorithm { AdaptGcim, AdaptVqe, AdaptVqeGcim, AdaptVqeGcimOneShot, AdaptGcimMn };

const char* to_string(Algorithm a);
// Accepts the to_string spellings; throws ConfigError otherwise.
Algorithm parse_algorithm(const std::string& name);

// Orthonormal: eigenpairs of H in a Gram-Schmidt frame of the generating functions.
// Gevp: Hf = εSf with S truncated at s_threshold.
enum class SubspaceSolver { Orthonormal, Gevp };

struct AdaptConfig {
  Algorithm algorithm = Algorithm::AdaptGcim;
  double theta_init = kPi / 4;
  double gcim_tol = 1e-6;       // hartree, on |Δε₀|
  double vqe_grad_tol = 1e-4;   // on Σ|gradient|
  int t_usr = 10;
  int max_iterations = 200;
  double s_threshold = 1e-13;
  SubspaceSolver solver = SubspaceSolver::Orthonormal;
  int m = 5;                    // optimize every m-th iteration
  int n = 2;                    // round cap per optimization
  int optimizer_rounds = 200;   // VQE budget per call
  bool exhaust_pool = false;    // ADAPT-GCIM: ignore the Δε₀ rule and run until no operator is left
  std::uint64_t seed = 0;

  // Throws ConfigError.
  void validate() const;
};

struct Selection {
  std::size_t index = 0;
  std::vector<double> gradients;  // every pool entry; excluded ones included
};

// argmax_l |⟨ψ|[H, A_l]|ψ⟩| over l ∉ excluded; ties go to the lowest index.
// Throws EmptySubspaceError when nothing is selectable.
Selection select_operator(const StateVector& surrogate, const Problem& problem,
                          const std::set<std::size_t>& excluded = {});

struct IterationRecord {
  int iteration = 0;
  std::size_t selected = 0;
  std::string label;
  std::vector<double> gradients;
  double gradient_norm_sum = 0.0;
  double energy = 0.0;                // ε₀ for subspace variants, E_VQE for ADAPT-VQE
  std::optional<double> vqe_energy;
  std::size_t subspace_dim = 0;
  Eigen::Index kept_dim = 0;
  int rounds = 0;
  std::vector<BasisRecipe> added;     // generating functions added this iteration
  BasisRecipe ansatz;                 // product or VQE recipe after this iteration
  double gradient_seconds = 0.0;
  double energy_seconds = 0.0;
};

struct AdaptTrace {
  Algorithm algorithm = Algorithm::AdaptGcim;
  std::vector<IterationRecord> iterations;
  bool converged = false;
  std::string stop_reason;
  double final_energy = 0.0;
  std::optional<double> vqe_energy;
  Eigen::VectorXd eigenvalues;        // subspace spectrum, or the VQE energy alone
  StateVector final_state;
  std::vector<BasisRecipe> basis;
  int total_rounds = 0;
  std::optional<double> exact_energy;
  std::optional<double> error;
  std::optional<double> overlap_deficit;
};

struct ExactReference {
  double energy = 0.0;
  StateVector state;
};

// Lowest state of the HF particle-number sector, singlet-filtered when closed shell.
ExactReference exact_reference(const Problem& problem);

// Fills exact_energy, error and overlap_deficit.
void attach_exact(AdaptTrace& trace, const ExactReference& exact);

AdaptTrace run_adapt_gcim(const Problem& problem, const AdaptConfig& config);
AdaptTrace run_adapt_vqe(const Problem& problem, const AdaptConfig& config);
AdaptTrace run_adapt_vqe_gcim(const Problem& problem, const AdaptConfig& config);
AdaptTrace run_adapt_vqe_gcim_one_shot(const Problem& problem, const AdaptConfig& config);
AdaptTrace run_adapt_gcim_mn(const Problem& problem, const AdaptConfig& config);
// Dispatches on config.algorithm.
AdaptTrace run_adapt(const Problem& problem, const AdaptConfig& config);

// ∂ε_k/∂θ_s where θ_s is the angle of pool operator s, shared by every factor that
// uses it. Derivative matrices are nonzero only in rows/columns of affected basis
// vectors; diagonal entries use the commutator form with ∂S_ii = 0. f is
// renormalized to f†f = 1 before the quotient rule. Throws RangeError for s
// outside the pool.
double gcim_energy_gradient(const std::vector<BasisRecipe>& basis, const GevpResult<Complex>& result,
                            const Problem& problem, std::size_t s, Eigen::Index k = 0);

}  // namespace gcim
