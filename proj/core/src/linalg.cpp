#include "qlan/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace qlan {

MatrixXc exp_i_hermitian(const MatrixXc& H) {
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(hermitian_part(H));
  const VectorXd& w = es.eigenvalues();
  VectorXc phase(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) phase(k) = std::polar(1.0, w(k));
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

MatrixXd sqrt_psd(const MatrixXd& A) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (A + A.transpose()));
  VectorXd w = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().transpose();
}

MatrixXc hermitian_part(const MatrixXc& A) { return 0.5 * (A + A.adjoint()); }

double trace_norm_hermitian(const MatrixXc& A) {
  if (A.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(hermitian_part(A), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

std::vector<double> hermitian_spectrum(const MatrixXc& A) {
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(hermitian_part(A), Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

MatrixXc kron(const MatrixXc& A, const MatrixXc& B) {
  MatrixXc out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return out;
}

double unitarity_error(const MatrixXc& U) {
  MatrixXc d = U.adjoint() * U - MatrixXc::Identity(U.cols(), U.cols());
  return d.cwiseAbs().maxCoeff();
}

MatrixXc random_unitary(int dim, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  MatrixXc z(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) z(i, j) = Complex(g(gen), g(gen));
  Eigen::HouseholderQR<MatrixXc> qr(z);
  MatrixXc q = qr.householderQ();
  MatrixXc r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix the phases so the distribution is Haar
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

double binomial_log(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace qlan
