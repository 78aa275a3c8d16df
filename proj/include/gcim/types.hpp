#pragma once

#include <complex>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace gcim {

using Complex = std::complex<double>;
using VectorXc = Eigen::VectorXcd;
using MatrixXc = Eigen::MatrixXcd;
using SparseMatrixXc = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

// Amplitudes over 2^n computational basis states; bit j of the index is qubit j.
using StateVector = Eigen::VectorXcd;

inline constexpr double kHartreeToEv = 27.211386245988;
inline constexpr double kChemicalAccuracy = 1.6e-3;
inline constexpr double kPi = 3.14159265358979323846;

}  // namespace gcim
