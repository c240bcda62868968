#pragma once

#include <array>
#include <cstdint>

#include <Eigen/Dense>

namespace sharpfr::deficit {

/// Finite-dimensional model of psi(f) = C*^2 <f, f> - ||S f||_{L^p(w)}^2.
///
/// The Hilbert space is C^n with metric <f, g> = sum_i g_i conj(f_i) g_i, the operator S maps it
/// into samples on m grid points, and the L^p norm uses positive weights w_j. C* is fixed so that
/// psi(f_star) = 0.
class DiscreteDeficitModel {
public:
    DiscreteDeficitModel(Eigen::VectorXd metric, Eigen::MatrixXcd op, Eigen::VectorXd weights,
                         double p, Eigen::VectorXcd f_star);

    Eigen::Index n() const { return op_.cols(); }
    Eigen::Index m() const { return op_.rows(); }
    double p() const { return p_; }
    const Eigen::VectorXd& metric() const { return metric_; }
    const Eigen::MatrixXcd& op() const { return op_; }
    const Eigen::VectorXd& weights() const { return weights_; }
    const Eigen::VectorXcd& f_star() const { return f_star_; }
    /// C*^2 = ||S f_star||^2 / <f_star, f_star>.
    double c_star_sq() const { return c_star_sq_; }

    Eigen::VectorXcd apply(const Eigen::VectorXcd& f) const { return op_ * f; }
    std::complex<double> inner(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) const;
    double norm_sq(const Eigen::VectorXcd& f) const { return inner(f, f).real(); }
    /// (sum_j w_j |u_j|^p)^{1/p}
    double lp_norm(const Eigen::VectorXcd& u) const;

private:
    Eigen::VectorXd metric_;
    Eigen::MatrixXcd op_;
    Eigen::VectorXd weights_;
    double p_;
    Eigen::VectorXcd f_star_;
    double c_star_sq_;
};

double psi(const DiscreteDeficitModel& model, const Eigen::VectorXcd& f);

/// First variation psi'(f) g. Throws DegenerateInputError when S f = 0.
double psi_prime(const DiscreteDeficitModel& model, const Eigen::VectorXcd& f,
                 const Eigen::VectorXcd& g);

/// The four terms of the second variation, as a symmetric real-bilinear form in (g, h):
///   t1 = 2 C*^2 Re<g, h>
///   t2 = p N^{2-p} sum w |u|^{p-2} Re(conj(Sg) Sh)
///   t3 = (p-2) N^{2-p} Re sum w |u|^{p-4} conj(u)^2 Sg Sh
///   t4 = 2 (2-p) N^{2-2p} (Re sum w |u|^{p-2} conj(u) Sg) (Re sum w |u|^{p-2} conj(u) Sh)
/// with u = S f and N = ||u||_p. psi''(f)(g, h) = t1 - t2 - t3 - t4.
/// Where u_j = 0 the t3 integrand is extended by its limit 0.
struct SecondVariationTerms {
    double t1 = 0.0;
    double t2 = 0.0;
    double t3 = 0.0;
    double t4 = 0.0;
    double total() const { return t1 - t2 - t3 - t4; }
};

SecondVariationTerms psi_second_terms(const DiscreteDeficitModel& model, const Eigen::VectorXcd& f,
                                      const Eigen::VectorXcd& g, const Eigen::VectorXcd& h);

/// Quadratic form psi''(f)(g, g).
double psi_second(const DiscreteDeficitModel& model, const Eigen::VectorXcd& f,
                  const Eigen::VectorXcd& g);

/// Direction a of the real basis of C^n: e_a for a < n, i e_{a-n} otherwise.
Eigen::VectorXcd real_basis_direction(Eigen::Index n, Eigen::Index a);

/// The 2n x 2n matrix of psi''(f) in the real basis.
Eigen::MatrixXd hessian_matrix(const DiscreteDeficitModel& model, const Eigen::VectorXcd& f);

struct VariationReport {
    double psi_value = 0.0;
    Eigen::VectorXd gradient_re;  // psi'(f) e_a
    Eigen::VectorXd gradient_im;  // psi'(f) (i e_a)
};

VariationReport variation_report(const DiscreteDeficitModel& model, const Eigen::VectorXcd& f);

/// Model with Gaussian complex S, metric and grid weights in [0.5, 1.5], and f_star = e_0.
DiscreteDeficitModel random_model(int n, int m, double p, std::uint64_t seed);

/// Step sizes of the finite-difference comparison; each halves the previous one.
inline constexpr std::array<double, 3> kFdSteps{1e-3, 5e-4, 2.5e-4};

/// Central-difference errors of psi' and psi'' along g at each step in kFdSteps, and the
/// smaller of the two observed orders log2(err(eps)/err(eps/2)).
struct FdComparison {
    std::array<double, 3> first_error{};
    std::array<double, 3> second_error{};
    double first_order = 0.0;
    double second_order = 0.0;
};

FdComparison fd_compare(const DiscreteDeficitModel& model, const Eigen::VectorXcd& f,
                        const Eigen::VectorXcd& g);

}  // namespace sharpfr::deficit
