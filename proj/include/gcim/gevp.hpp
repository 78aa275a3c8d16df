#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "gcim/errors.hpp"

namespace gcim {

enum class OverlapMitigation { Truncate, Jitter };

template <class Scalar>
struct GevpResult {
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

  RealVector eigenvalues;    // ascending
  Matrix eigenvectors;       // original coordinates, f†Sf = 1 per column
  Eigen::Index kept_dim = 0;
  RealVector s_eigenvalues;  // full spectrum of S, ascending
  RealVector dropped;        // eigenvalues of S at or below the threshold
  Real threshold = 0;
  Matrix u_trunc;            // M × L
  RealVector d_trunc;        // L
};

template <class Real>
struct GevpOptions {
  Real threshold = Real(1e-13);
  OverlapMitigation mitigation = OverlapMitigation::Truncate;
  Real jitter = Real(1e-12);
};

namespace detail {

// Sorts pairs ascending; near-degenerate pairs ordered by the index of their
// largest-magnitude coefficient.
template <class Scalar>
void order_pairs(GevpResult<Scalar>& r) {
  using Real = typename GevpResult<Scalar>::Real;
  const Eigen::Index n = r.eigenvalues.size();
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  std::vector<Eigen::Index> dominant(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) r.eigenvectors.col(k).cwiseAbs().maxCoeff(&dominant[k]);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](auto a, auto b) { return r.eigenvalues(a) < r.eigenvalues(b); });
  const Real tol = Real(1e-12);
  for (std::size_t lo = 0; lo < idx.size();) {
    std::size_t hi = lo + 1;
    while (hi < idx.size() &&
           r.eigenvalues(idx[hi]) - r.eigenvalues(idx[lo]) <=
               tol * std::max(Real(1), std::abs(r.eigenvalues(idx[lo]))))
      ++hi;
    std::stable_sort(idx.begin() + lo, idx.begin() + hi,
                     [&](auto a, auto b) { return dominant[a] < dominant[b]; });
    lo = hi;
  }
  typename GevpResult<Scalar>::RealVector vals(n);
  typename GevpResult<Scalar>::Matrix vecs(r.eigenvectors.rows(), n);
  for (Eigen::Index k = 0; k < n; ++k) {
    vals(k) = r.eigenvalues(idx[k]);
    vecs.col(k) = r.eigenvectors.col(idx[k]);
  }
  r.eigenvalues = std::move(vals);
  r.eigenvectors = std::move(vecs);
}

}  // namespace detail

// Hf = εSf. Truncate: S = UDU†, keep D_ii > threshold, solve the whitened
// problem D^{-1/2}U†HUD^{-1/2} g = εg and map back f = U D^{-1/2} g.
// Jitter: solve with S + jitter·I directly.
template <class DerivedH, class DerivedS>
GevpResult<typename DerivedH::Scalar> solve_gevp(
    const Eigen::MatrixBase<DerivedH>& h_in, const Eigen::MatrixBase<DerivedS>& s_in,
    const GevpOptions<typename Eigen::NumTraits<typename DerivedH::Scalar>::Real>& opts) {
  using Scalar = typename DerivedH::Scalar;
  using Result = GevpResult<Scalar>;
  using Matrix = typename Result::Matrix;
  using RealVector = typename Result::RealVector;

  if (h_in.rows() != h_in.cols() || s_in.rows() != s_in.cols() || h_in.rows() != s_in.rows())
    throw ShapeError("H and S must be square with equal dimensions");
  if (h_in.rows() == 0) throw EmptySubspaceError("empty subspace");

  const Matrix h = (h_in + h_in.adjoint()) / Scalar(2);
  const Matrix s = (s_in + s_in.adjoint()) / Scalar(2);
  Result r;
  r.threshold = opts.threshold;

  Eigen::SelfAdjointEigenSolver<Matrix> se(s);
  r.s_eigenvalues = se.eigenvalues();

  if (opts.mitigation == OverlapMitigation::Jitter) {
    const Matrix sj = s + opts.jitter * Matrix::Identity(s.rows(), s.cols());
    Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ge(h, sj, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
    if (ge.info() != Eigen::Success)
      throw ContractViolation("jittered overlap matrix is not positive definite");
    r.eigenvalues = ge.eigenvalues();
    r.eigenvectors = ge.eigenvectors();
    r.kept_dim = s.rows();
    r.u_trunc = Matrix::Identity(s.rows(), s.cols());
    r.d_trunc = RealVector::Ones(s.rows());
    r.dropped.resize(0);
    detail::order_pairs(r);
    return r;
  }

  std::vector<Eigen::Index> keep, drop;
  for (Eigen::Index k = 0; k < r.s_eigenvalues.size(); ++k)
    (r.s_eigenvalues(k) > opts.threshold ? keep : drop).push_back(k);
  if (keep.empty()) throw EmptySubspaceError("no overlap eigenvalue exceeds the threshold");

  const auto l = static_cast<Eigen::Index>(keep.size());
  r.kept_dim = l;
  r.u_trunc.resize(s.rows(), l);
  r.d_trunc.resize(l);
  for (Eigen::Index k = 0; k < l; ++k) {
    r.u_trunc.col(k) = se.eigenvectors().col(keep[k]);
    r.d_trunc(k) = r.s_eigenvalues(keep[k]);
  }
  r.dropped.resize(static_cast<Eigen::Index>(drop.size()));
  for (Eigen::Index k = 0; k < r.dropped.size(); ++k) r.dropped(k) = r.s_eigenvalues(drop[k]);

  const RealVector inv_sqrt = r.d_trunc.cwiseSqrt().cwiseInverse();
  const Matrix x = r.u_trunc * inv_sqrt.asDiagonal();
  Matrix hw = x.adjoint() * h * x;
  hw = ((hw + hw.adjoint()) / Scalar(2)).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> he(hw);
  r.eigenvalues = he.eigenvalues();
  r.eigenvectors = x * he.eigenvectors();
  detail::order_pairs(r);
  return r;
}

template <class DerivedH, class DerivedS>
GevpResult<typename DerivedH::Scalar> solve_gevp(
    const Eigen::MatrixBase<DerivedH>& h, const Eigen::MatrixBase<DerivedS>& s,
    typename Eigen::NumTraits<typename DerivedH::Scalar>::Real threshold = 1e-13) {
  GevpOptions<typename Eigen::NumTraits<typename DerivedH::Scalar>::Real> o;
  o.threshold = threshold;
  return solve_gevp(h, s, o);
}

}  // namespace gcim
