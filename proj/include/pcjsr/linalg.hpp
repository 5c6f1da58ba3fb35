#pragma once

#include <Eigen/Dense>

namespace pcjsr {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Largest eigenvalue modulus of a square real matrix (Schur-based).
double spectral_radius(const Matrix& M);

// Largest singular value, computed as sqrt(lambda_max(M^T M)).
double operator_norm(const Matrix& M);

// Smallest eigenvalue of a symmetric matrix. The input is symmetrized first
// so callers can pass matrices that are symmetric up to rounding.
double min_eig_sym(const Matrix& S);

// Largest eigenvalue of a symmetric matrix, same symmetrization policy.
double max_eig_sym(const Matrix& S);

inline Matrix symmetrized(const Matrix& S) { return 0.5 * (S + S.transpose()); }

}  // namespace pcjsr
