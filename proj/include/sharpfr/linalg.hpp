#pragma once

#include <Eigen/Dense>

namespace sharpfr::linalg {

/// Eigenvalues (ascending) of a real symmetric matrix by cyclic Jacobi rotations.
///
/// Sweeps continue until the off-diagonal Frobenius norm is below rel_tol * ||A||_F.
Eigen::VectorXd jacobi_eigenvalues(Eigen::MatrixXd a, double rel_tol = 1e-14, int max_sweeps = 100);

/// Smallest eigenvalue of a Hermitian matrix, via the real symmetric embedding [[X, -Y], [Y, X]].
double hermitian_min_eigenvalue(const Eigen::MatrixXcd& h, double rel_tol = 1e-14);

}  // namespace sharpfr::linalg
