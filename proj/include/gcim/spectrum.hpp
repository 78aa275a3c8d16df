#pragma once

#include <vector>

#include "gcim/pauli.hpp"
#include "gcim/types.hpp"

namespace gcim {

struct ExactSpectrum {
  Eigen::VectorXd eigenvalues;  // ascending
  MatrixXc eigenvectors;        // full-register columns
  StateVector ground_state;
  Eigen::VectorXd residuals;    // ‖Hv − εv‖ per pair
};

// Restricts to fixed (n_alpha, n_beta); singlet_only additionally projects onto S² = 0.
struct Sector {
  int n_alpha = 0;
  int n_beta = 0;
  bool singlet_only = false;
};

struct LanczosOptions {
  int krylov_dim = 80;
  int max_restarts = 500;
  double tolerance = 1e-10;
};

inline constexpr int kDenseQubitLimit = 10;

// Lowest k pairs over the whole register: dense up to kDenseQubitLimit qubits, Lanczos above.
ExactSpectrum exact_spectrum(const PauliSum& h, int k);
ExactSpectrum exact_spectrum(const PauliSum& h, int k, const Sector& sector);

// Restarted Lanczos with full reorthogonalization; converged pairs are locked and deflated.
ExactSpectrum lanczos_lowest(const SparseMatrixXc& h, int k, const LanczosOptions& opts = {});

// Register indices carrying n_alpha up and n_beta down electrons, ascending.
std::vector<std::uint64_t> sector_indices(int n_qubits, int n_alpha, int n_beta);

}  // namespace gcim
