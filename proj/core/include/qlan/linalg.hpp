#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace qlan {

using Complex = std::complex<double>;
using BigInt = boost::multiprecision::cpp_int;

using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// exp(iH) for Hermitian H, through the spectral decomposition.
MatrixXc exp_i_hermitian(const MatrixXc& H);

/// Principal square root of a real symmetric positive semidefinite matrix.
MatrixXd sqrt_psd(const MatrixXd& A);

/// Hermitian part (A + A*)/2; used before eigen-solves to remove rounding asymmetry.
MatrixXc hermitian_part(const MatrixXc& A);

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm_hermitian(const MatrixXc& A);

/// Eigenvalues of a Hermitian matrix, sorted in decreasing order.
std::vector<double> hermitian_spectrum(const MatrixXc& A);

/// Kronecker product A (x) B with A's index most significant.
MatrixXc kron(const MatrixXc& A, const MatrixXc& B);

/// max |A*A - I|, entrywise.
double unitarity_error(const MatrixXc& U);

/// Haar-random unitary from a seeded generator (QR of a Ginibre matrix).
MatrixXc random_unitary(int dim, unsigned seed);

double binomial_log(int n, int k);

}  // namespace qlan
