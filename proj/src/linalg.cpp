#include "pcjsr/linalg.hpp"

#include <Eigen/Eigenvalues>

#include "pcjsr/errors.hpp"

namespace pcjsr {

namespace {

void require_square(const Matrix& M, const char* who) {
  if (M.rows() == 0 || M.rows() != M.cols())
    fail(ErrorCode::InvalidInput, std::string(who) + ": matrix must be square and nonempty");
  if (!M.allFinite())
    fail(ErrorCode::InvalidInput, std::string(who) + ": matrix has non-finite entries");
}

}  // namespace

double spectral_radius(const Matrix& M) {
  require_square(M, "spectral_radius");
  Eigen::EigenSolver<Matrix> es(M, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    fail(ErrorCode::NumericalFailure, "spectral_radius: eigenvalue iteration did not converge");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double operator_norm(const Matrix& M) {
  if (M.rows() == 0 || M.cols() == 0)
    fail(ErrorCode::InvalidInput, "operator_norm: empty matrix");
  if (!M.allFinite())
    fail(ErrorCode::InvalidInput, "operator_norm: matrix has non-finite entries");
  Matrix G = M.transpose() * M;
  double lmax = max_eig_sym(G);
  return lmax <= 0.0 ? 0.0 : std::sqrt(lmax);
}

double min_eig_sym(const Matrix& S) {
  require_square(S, "min_eig_sym");
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(S), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    fail(ErrorCode::NumericalFailure, "min_eig_sym: eigenvalue iteration did not converge");
  return es.eigenvalues().minCoeff();
}

double max_eig_sym(const Matrix& S) {
  require_square(S, "max_eig_sym");
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(S), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    fail(ErrorCode::NumericalFailure, "max_eig_sym: eigenvalue iteration did not converge");
  return es.eigenvalues().maxCoeff();
}

}  // namespace pcjsr
