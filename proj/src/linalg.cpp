#include "sharpfr/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "sharpfr/errors.hpp"

namespace sharpfr::linalg {

namespace {

double off_diagonal_norm(const Eigen::MatrixXd& a) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            if (i != j) s += a(i, j) * a(i, j);
        }
    }
    return std::sqrt(s);
}

}  // namespace

Eigen::VectorXd jacobi_eigenvalues(Eigen::MatrixXd a, double rel_tol, int max_sweeps) {
    if (a.rows() != a.cols()) throw DomainError("jacobi_eigenvalues: matrix must be square");
    const Eigen::Index n = a.rows();
    const double threshold = rel_tol * a.norm();
    for (int sweep = 0; sweep < max_sweeps && off_diagonal_norm(a) > threshold; ++sweep) {
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                // rotation angle zeroing a(p, q)
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    Eigen::VectorXd eig = a.diagonal();
    std::sort(eig.data(), eig.data() + eig.size());
    return eig;
}

double hermitian_min_eigenvalue(const Eigen::MatrixXcd& h, double rel_tol) {
    const Eigen::Index n = h.rows();
    if (n == 0) throw DomainError("hermitian_min_eigenvalue: empty matrix");
    Eigen::MatrixXd m(2 * n, 2 * n);
    const Eigen::MatrixXd x = 0.5 * (h.real() + h.real().transpose());
    const Eigen::MatrixXd y = 0.5 * (h.imag() - h.imag().transpose());
    m.topLeftCorner(n, n) = x;
    m.bottomRightCorner(n, n) = x;
    m.topRightCorner(n, n) = -y;
    m.bottomLeftCorner(n, n) = y;
    return jacobi_eigenvalues(std::move(m), rel_tol).minCoeff();
}

}  // namespace sharpfr::linalg
