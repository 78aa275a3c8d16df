#include "gcim/spectrum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "gcim/errors.hpp"
#include "gcim/fermion.hpp"

namespace gcim {

namespace {

constexpr Eigen::Index kDenseSectorLimit = 3000;

Eigen::VectorXd residual_norms(const SparseMatrixXc& h, const MatrixXc& vecs,
                               const Eigen::VectorXd& vals) {
  Eigen::VectorXd r(vals.size());
  for (Eigen::Index j = 0; j < vals.size(); ++j)
    r(j) = (h * vecs.col(j) - vals(j) * vecs.col(j)).norm();
  return r;
}

void take_lowest(const Eigen::SelfAdjointEigenSolver<MatrixXc>& es, int k, Eigen::VectorXd& vals,
                 MatrixXc& vecs) {
  if (es.info() != Eigen::Success) throw ResourceError("dense eigensolve failed");
  const auto kk = std::min<Eigen::Index>(k, es.eigenvalues().size());
  vals = es.eigenvalues().head(kk);
  vecs = es.eigenvectors().leftCols(kk);
}

StateVector start_vector(Eigen::Index dim) {
  StateVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    v(i) = Complex{1.0 + 0.37 * std::sin(1.3 * static_cast<double>(i) + 0.2), 0.0};
  return v.normalized();
}

// Two passes of classical Gram-Schmidt against the columns of q.
void orthogonalize(StateVector& w, const MatrixXc& q, Eigen::Index cols) {
  if (cols == 0) return;
  for (int pass = 0; pass < 2; ++pass) w -= q.leftCols(cols) * (q.leftCols(cols).adjoint() * w);
}

SparseMatrixXc restrict_to(const SparseMatrixXc& h, const std::vector<std::uint64_t>& idx) {
  std::vector<Eigen::Index> pos(static_cast<std::size_t>(h.rows()), -1);
  for (std::size_t a = 0; a < idx.size(); ++a) pos[idx[a]] = static_cast<Eigen::Index>(a);
  std::vector<Eigen::Triplet<Complex>> trip;
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (SparseMatrixXc::InnerIterator it(h, static_cast<Eigen::Index>(idx[a])); it; ++it) {
      const Eigen::Index b = pos[static_cast<std::size_t>(it.col())];
      if (b >= 0) trip.emplace_back(static_cast<Eigen::Index>(a), b, it.value());
    }
  const auto d = static_cast<Eigen::Index>(idx.size());
  SparseMatrixXc out(d, d);
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

}  // namespace

std::vector<std::uint64_t> sector_indices(int n_qubits, int n_alpha, int n_beta) {
  if (n_qubits > 30) throw ResourceError("sector enumeration limited to 30 qubits");
  std::uint64_t up = 0;
  for (int q = 0; q < n_qubits; q += 2) up |= 1ULL << q;
  std::vector<std::uint64_t> out;
  const std::uint64_t dim = 1ULL << n_qubits;
  for (std::uint64_t i = 0; i < dim; ++i)
    if (std::popcount(i & up) == n_alpha && std::popcount(i & ~up) == n_beta) out.push_back(i);
  return out;
}

ExactSpectrum lanczos_lowest(const SparseMatrixXc& h, int k, const LanczosOptions& opts) {
  const Eigen::Index dim = h.rows();
  if (k < 1) throw RangeError("eigenpair count must be positive");
  const auto kk = std::min<Eigen::Index>(k, dim);
  ExactSpectrum out;

  if (dim <= 2 * opts.krylov_dim) {
    Eigen::SelfAdjointEigenSolver<MatrixXc> es{MatrixXc(h)};
    take_lowest(es, static_cast<int>(kk), out.eigenvalues, out.eigenvectors);
  } else {
    const Eigen::Index m = opts.krylov_dim;
    MatrixXc locked(dim, kk);
    Eigen::Index n_locked = 0;
    StateVector v = start_vector(dim);
    MatrixXc basis(dim, m), hbasis(dim, m);
    while (n_locked < kk) {
      orthogonalize(v, locked, n_locked);
      v.normalize();
      bool converged = false;
      for (int restart = 0; restart < opts.max_restarts && !converged; ++restart) {
        Eigen::Index used = 0;
        bool invariant = false;
        basis.col(0) = v;
        for (Eigen::Index j = 0; j < m; ++j) {
          hbasis.col(j) = h * basis.col(j);
          used = j + 1;
          if (j + 1 == m) break;
          StateVector w = hbasis.col(j);
          orthogonalize(w, locked, n_locked);
          orthogonalize(w, basis, j + 1);
          const double beta = w.norm();
          if (beta < 1e-12) {
            invariant = true;
            break;
          }
          basis.col(j + 1) = w / beta;
        }
        MatrixXc t = basis.leftCols(used).adjoint() * hbasis.leftCols(used);
        t = 0.5 * (t + t.adjoint()).eval();
        Eigen::SelfAdjointEigenSolver<MatrixXc> es(t);
        StateVector y = basis.leftCols(used) * es.eigenvectors().col(0);
        const double theta = es.eigenvalues()(0);
        const StateVector hy = hbasis.leftCols(used) * es.eigenvectors().col(0);
        StateVector r = hy - theta * y;
        orthogonalize(r, locked, n_locked);
        if (r.norm() < opts.tolerance || invariant) converged = true;
        v = y.normalized();
      }
      if (!converged) throw ResourceError("Lanczos did not converge");
      orthogonalize(v, locked, n_locked);
      locked.col(n_locked++) = v.normalized();
      v = start_vector(dim);
    }
    // Final Rayleigh-Ritz over the locked block orders and polishes the pairs.
    MatrixXc t = locked.adjoint() * (h * locked);
    t = 0.5 * (t + t.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(t);
    out.eigenvalues = es.eigenvalues();
    out.eigenvectors = locked * es.eigenvectors();
  }
  out.residuals = residual_norms(h, out.eigenvectors, out.eigenvalues);
  out.ground_state = out.eigenvectors.col(0);
  return out;
}

ExactSpectrum exact_spectrum(const PauliSum& h, int k) {
  const int n = h.n_qubits();
  if (n > 16) throw ResourceError("exact spectrum limited to 16 qubits");
  if (k < 1) throw RangeError("eigenpair count must be positive");
  if (n > kDenseQubitLimit) return lanczos_lowest(to_sparse(h), k);
  ExactSpectrum out;
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(jw_to_matrix(h));
  take_lowest(es, k, out.eigenvalues, out.eigenvectors);
  out.residuals = residual_norms(to_sparse(h), out.eigenvectors, out.eigenvalues);
  out.ground_state = out.eigenvectors.col(0);
  return out;
}

ExactSpectrum exact_spectrum(const PauliSum& h, int k, const Sector& sector) {
  const int n = h.n_qubits();
  if (n > 16) throw ResourceError("exact spectrum limited to 16 qubits");
  if (k < 1) throw RangeError("eigenpair count must be positive");
  const auto idx = sector_indices(n, sector.n_alpha, sector.n_beta);
  if (idx.empty()) throw RangeError("empty particle-number sector");
  const SparseMatrixXc full = to_sparse(h);
  const SparseMatrixXc sub = restrict_to(full, idx);
  const auto d = static_cast<Eigen::Index>(idx.size());

  Eigen::VectorXd vals;
  MatrixXc local;
  if (sector.singlet_only) {
    if (n % 2) throw ShapeError("spin filter needs an even qubit count");
    if (d > kDenseSectorLimit) throw ResourceError("singlet projection limited to dense sectors");
    const MatrixXc s2 = MatrixXc(restrict_to(to_sparse(s_squared_operator(n / 2)), idx));
    Eigen::SelfAdjointEigenSolver<MatrixXc> ss(s2);
    Eigen::Index r = 0;
    while (r < d && std::abs(ss.eigenvalues()(r)) < 1e-8) ++r;
    if (r == 0) throw RangeError("sector holds no singlet states");
    const MatrixXc v = ss.eigenvectors().leftCols(r);
    MatrixXc hs = v.adjoint() * (sub * v);
    hs = 0.5 * (hs + hs.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(hs);
    MatrixXc y;
    take_lowest(es, k, vals, y);
    local = v * y;
  } else if (d <= kDenseSectorLimit) {
    Eigen::SelfAdjointEigenSolver<MatrixXc> es{MatrixXc(sub)};
    take_lowest(es, k, vals, local);
  } else {
    ExactSpectrum part = lanczos_lowest(sub, k);
    vals = part.eigenvalues;
    local = part.eigenvectors;
  }

  ExactSpectrum out;
  out.eigenvalues = vals;
  out.eigenvectors = MatrixXc::Zero(full.rows(), vals.size());
  for (Eigen::Index a = 0; a < d; ++a)
    out.eigenvectors.row(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(a)])) = local.row(a);
  out.residuals = residual_norms(full, out.eigenvectors, out.eigenvalues);
  out.ground_state = out.eigenvectors.col(0);
  return out;
}

}  // namespace gcim
