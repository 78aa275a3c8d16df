#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gcim/gevp.hpp"
#include "gcim/subspace.hpp"

namespace gcim {

enum class ShotMode { Binomial, Gaussian };

const char* to_string(ShotMode m);
ShotMode parse_shot_mode(const std::string& name);

struct ShotConfig {
  double tau = 1e4;             // shots per Pauli term
  double s_multiplier = 100.0;  // S entries use s_multiplier·τ shots
  ShotMode mode = ShotMode::Binomial;
  bool importance_sampling = false;
  std::uint64_t seed = 0;

  // Throws ConfigError.
  void validate() const;
};

// One matrix element as Σ_k c_k p_k with p_k = Re⟨ψ_i|P_k|ψ_j⟩ ∈ [−1, 1].
struct EntryEstimator {
  std::vector<double> c;
  std::vector<double> p;
  std::vector<std::int64_t> shots;  // filled by an allocation

  std::size_t size() const { return c.size(); }
  double mean() const;
  // Σ c_k² (1 − p_k²) / N_k.
  double variance() const;
};

// Throws ConsistencyError when a coefficient or an entry has an imaginary part above 1e-10.
EntryEstimator exact_decomposition(const StateVector& bra, const PauliSum& h, const StateVector& ket);

// One draw of Ξ = Σ c_k Λ_k / N_k. Binomial: Λ = 2·Bin(N, (1+p)/2) − N. Gaussian: Λ ~ N(Np, N(1−p²)).
double sample_entry(const EntryEstimator& est, ShotMode mode, std::mt19937_64& rng);

// τ per term.
std::vector<std::int64_t> allocate_shots_uniform(std::size_t n_terms, double tau);
// N_k = round(|c_k| / Σ|c| · τ · n_term), at least 1 for nonzero c_k.
// Throws ContractViolation when every coefficient is zero.
std::vector<std::int64_t> allocate_shots_is(const std::vector<double>& coeffs, double tau,
                                            std::size_t n_term);

// Smallest uniform N with Σ c_k²(1 − p_k²)/(N a²) ≤ η; p empty means the worst case p = 0.
std::int64_t chebyshev_shots(const std::vector<double>& coeffs, double a, double eta,
                             const std::vector<double>& p = {});

// Upper-triangle decompositions of H and S over a fixed basis, row-major (i ≤ j).
struct MatrixDecomposition {
  Eigen::Index dim = 0;
  std::vector<EntryEstimator> h;
  std::vector<EntryEstimator> s;
  ProjectedMatrices exact;

  std::size_t entry(Eigen::Index i, Eigen::Index j) const;
};

MatrixDecomposition decompose_matrices(const std::vector<StateVector>& states, const PauliSum& h);

// Assigns shots to every entry per cfg (uniform or importance sampled for H, s_multiplier·τ for S).
void allocate(MatrixDecomposition& d, const ShotConfig& cfg);

// One noisy (H, S) pair; entry streams are seeded by (cfg.seed, run, matrix, entry).
ProjectedMatrices perturb_matrices(const MatrixDecomposition& d, const ShotConfig& cfg,
                                   std::uint64_t run);

struct McSummary {
  std::vector<double> errors;  // |ε₀(noisy) − ε₀(exact)| per run
  std::vector<Eigen::Index> kept_dims;
  double mean_error = 0.0;
  double median_error = 0.0;
  double ci_low = 0.0;   // 2.5th percentile
  double ci_high = 0.0;  // 97.5th percentile
};

// Repeats perturb + solve_gevp at `threshold`; d must already carry shots.
McSummary mc_experiment(const MatrixDecomposition& d, double exact_energy, const ShotConfig& cfg,
                        int runs = 100, double threshold = 1e-5);

// +1 above threshold, −1 below −threshold, 0 otherwise.
int hf_filter(double value, double threshold = 0.2);

}  // namespace gcim
