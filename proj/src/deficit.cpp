#include "sharpfr/deficit.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sharpfr/errors.hpp"

namespace sharpfr::deficit {

namespace {

struct Sampled {
    Eigen::VectorXcd u;
    double norm = 0.0;     // ||u||_p
    Eigen::VectorXd d2;    // w |u|^{p-2}
    Eigen::VectorXcd d3;   // w |u|^{p-4} conj(u)^2, zero where u = 0
};

Sampled sample(const DiscreteDeficitModel& model, const Eigen::VectorXcd& f) {
    if (f.size() != model.n()) throw DomainError("vector length does not match the model");
    Sampled s;
    s.u = model.apply(f);
    s.norm = model.lp_norm(s.u);
    if (!(s.norm > 0.0)) throw DegenerateInputError("S f vanishes on the grid");
    const double p = model.p();
    s.d2.resize(s.u.size());
    s.d3.resize(s.u.size());
    for (Eigen::Index j = 0; j < s.u.size(); ++j) {
        const double a = std::abs(s.u[j]);
        const double w = model.weights()[j];
        if (a == 0.0) {
            s.d2[j] = 0.0;
            s.d3[j] = 0.0;
            continue;
        }
        const double ap2 = std::pow(a, p - 2.0);
        s.d2[j] = w * ap2;
        // |u|^{p-4} conj(u)^2 = |u|^{p-2} (conj(u)/|u|)^2
        const std::complex<double> phase = std::conj(s.u[j]) / a;
        s.d3[j] = w * ap2 * phase * phase;
    }
    return s;
}

}  // namespace

DiscreteDeficitModel::DiscreteDeficitModel(Eigen::VectorXd metric, Eigen::MatrixXcd op,
                                           Eigen::VectorXd weights, double p,
                                           Eigen::VectorXcd f_star)
    : metric_(std::move(metric)),
      op_(std::move(op)),
      weights_(std::move(weights)),
      p_(p),
      f_star_(std::move(f_star)),
      c_star_sq_(0.0) {
    if (metric_.size() != op_.cols() || f_star_.size() != op_.cols() || weights_.size() != op_.rows()) {
        throw DomainError("deficit model: inconsistent dimensions");
    }
    if (!(p_ > 2.0)) throw DomainError("deficit model: p must exceed 2");
    if (metric_.size() == 0 || metric_.minCoeff() <= 0.0) {
        throw DomainError("deficit model: metric weights must be positive");
    }
    if (weights_.size() == 0 || weights_.minCoeff() <= 0.0) {
        throw DomainError("deficit model: grid weights must be positive");
    }
    const double fs = norm_sq(f_star_);
    const double n = lp_norm(apply(f_star_));
    if (!(fs > 0.0) || !(n > 0.0)) throw DegenerateInputError("deficit model: S f_star vanishes");
    c_star_sq_ = n * n / fs;
}

std::complex<double> DiscreteDeficitModel::inner(const Eigen::VectorXcd& f,
                                                 const Eigen::VectorXcd& g) const {
    std::complex<double> s = 0.0;
    for (Eigen::Index i = 0; i < f.size(); ++i) s += metric_[i] * std::conj(f[i]) * g[i];
    return s;
}

double DiscreteDeficitModel::lp_norm(const Eigen::VectorXcd& u) const {
    double s = 0.0;
    for (Eigen::Index j = 0; j < u.size(); ++j) s += weights_[j] * std::pow(std::abs(u[j]), p_);
    return std::pow(s, 1.0 / p_);
}

double psi(const DiscreteDeficitModel& model, const Eigen::VectorXcd& f) {
    const double n = model.lp_norm(model.apply(f));
    return model.c_star_sq() * model.norm_sq(f) - n * n;
}

double psi_prime(const DiscreteDeficitModel& model, const Eigen::VectorXcd& f,
                 const Eigen::VectorXcd& g) {
    const Sampled s = sample(model, f);
    const Eigen::VectorXcd v = model.apply(g);
    std::complex<double> cross = 0.0;
    for (Eigen::Index j = 0; j < v.size(); ++j) cross += s.d2[j] * std::conj(s.u[j]) * v[j];
    return 2.0 * model.c_star_sq() * model.inner(f, g).real() -
           2.0 * std::pow(s.norm, 2.0 - model.p()) * cross.real();
}

SecondVariationTerms psi_second_terms(const DiscreteDeficitModel& model, const Eigen::VectorXcd& f,
                                      const Eigen::VectorXcd& g, const Eigen::VectorXcd& h) {
    const Sampled s = sample(model, f);
    const Eigen::VectorXcd vg = model.apply(g);
    const Eigen::VectorXcd vh = model.apply(h);
    const double p = model.p();
    double s2 = 0.0;
    std::complex<double> s3 = 0.0, bg = 0.0, bh = 0.0;
    for (Eigen::Index j = 0; j < vg.size(); ++j) {
        s2 += s.d2[j] * (std::conj(vg[j]) * vh[j]).real();
        s3 += s.d3[j] * vg[j] * vh[j];
        bg += s.d2[j] * std::conj(s.u[j]) * vg[j];
        bh += s.d2[j] * std::conj(s.u[j]) * vh[j];
    }
    const double n2p = std::pow(s.norm, 2.0 - p);
    SecondVariationTerms t;
    t.t1 = 2.0 * model.c_star_sq() * model.inner(g, h).real();
    t.t2 = p * n2p * s2;
    t.t3 = (p - 2.0) * n2p * s3.real();
    t.t4 = 2.0 * (2.0 - p) * std::pow(s.norm, 2.0 - 2.0 * p) * bg.real() * bh.real();
    return t;
}

double psi_second(const DiscreteDeficitModel& model, const Eigen::VectorXcd& f,
                  const Eigen::VectorXcd& g) {
    return psi_second_terms(model, f, g, g).total();
}

Eigen::VectorXcd real_basis_direction(Eigen::Index n, Eigen::Index a) {
    if (a < 0 || a >= 2 * n) throw DomainError("real basis index out of range");
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
    e[a % n] = a < n ? std::complex<double>(1.0, 0.0) : std::complex<double>(0.0, 1.0);
    return e;
}

Eigen::MatrixXd hessian_matrix(const DiscreteDeficitModel& model, const Eigen::VectorXcd& f) {
    const Sampled s = sample(model, f);
    const Eigen::Index n = model.n();
    const double p = model.p();
    // images of the real basis: columns of S, then i times the columns of S
    Eigen::MatrixXcd v(model.m(), 2 * n);
    v.leftCols(n) = model.op();
    v.rightCols(n) = std::complex<double>(0.0, 1.0) * model.op();

    const double n2p = std::pow(s.norm, 2.0 - p);
    const Eigen::MatrixXcd d2v = s.d2.asDiagonal() * v;
    const Eigen::MatrixXd t2 = p * n2p * (v.adjoint() * d2v).real();
    const Eigen::MatrixXd t3 = (p - 2.0) * n2p * (v.transpose() * (s.d3.asDiagonal() * v)).real();
    const Eigen::VectorXcd weighted_u = s.d2.cwiseProduct(s.u.conjugate());
    const Eigen::VectorXd b = (v.transpose() * weighted_u).real();
    const Eigen::MatrixXd t4 = 2.0 * (2.0 - p) * std::pow(s.norm, 2.0 - 2.0 * p) * (b * b.transpose());

    Eigen::VectorXd g(2 * n);
    g << model.metric(), model.metric();
    Eigen::MatrixXd h = Eigen::MatrixXd(2.0 * model.c_star_sq() * g.asDiagonal()) - t2 - t3 - t4;
    return 0.5 * (h + h.transpose());
}

VariationReport variation_report(const DiscreteDeficitModel& model, const Eigen::VectorXcd& f) {
    const Eigen::Index n = model.n();
    VariationReport r;
    r.psi_value = psi(model, f);
    r.gradient_re.resize(n);
    r.gradient_im.resize(n);
    for (Eigen::Index a = 0; a < n; ++a) {
        r.gradient_re[a] = psi_prime(model, f, real_basis_direction(n, a));
        r.gradient_im[a] = psi_prime(model, f, real_basis_direction(n, n + a));
    }
    return r;
}

DiscreteDeficitModel random_model(int n, int m, double p, std::uint64_t seed) {
    if (n < 1 || m < 1) throw DomainError("random_model: sizes must be positive");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unit(0.5, 1.5);
    Eigen::MatrixXcd op(m, n);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i) op(j, i) = {normal(rng), normal(rng)};
    Eigen::VectorXd metric(n), weights(m);
    for (int i = 0; i < n; ++i) metric[i] = unit(rng);
    for (int j = 0; j < m; ++j) weights[j] = unit(rng);
    Eigen::VectorXcd f_star = Eigen::VectorXcd::Zero(n);
    f_star[0] = 1.0;
    return DiscreteDeficitModel(std::move(metric), std::move(op), std::move(weights), p, std::move(f_star));
}

namespace {

// psi in extended precision, so the difference quotients below stay clear of round-off at the
// smallest step.
long double psi_extended(const DiscreteDeficitModel& model, const Eigen::VectorXcd& f) {
    using C = std::complex<long double>;
    long double hilbert = 0.0L;
    for (Eigen::Index i = 0; i < f.size(); ++i) hilbert += model.metric()[i] * std::norm(C(f[i]));
    long double lp = 0.0L;
    for (Eigen::Index j = 0; j < model.m(); ++j) {
        C u = 0.0L;
        for (Eigen::Index i = 0; i < f.size(); ++i) u += C(model.op()(j, i)) * C(f[i]);
        lp += model.weights()[j] * std::pow(std::abs(u), static_cast<long double>(model.p()));
    }
    const long double n = std::pow(lp, 1.0L / model.p());
    return model.c_star_sq() * hilbert - n * n;
}

}  // namespace

FdComparison fd_compare(const DiscreteDeficitModel& model, const Eigen::VectorXcd& f,
                        const Eigen::VectorXcd& g) {
    const double exact1 = psi_prime(model, f, g);
    const double exact2 = psi_second(model, f, g);
    const long double base = psi_extended(model, f);
    FdComparison c;
    for (std::size_t i = 0; i < kFdSteps.size(); ++i) {
        const double eps = kFdSteps[i];
        const Eigen::VectorXcd fp = f + eps * g;
        const Eigen::VectorXcd fm = f - eps * g;
        const long double up = psi_extended(model, fp);
        const long double dn = psi_extended(model, fm);
        c.first_error[i] = std::abs(static_cast<double>((up - dn) / (2.0L * eps)) - exact1);
        c.second_error[i] = std::abs(static_cast<double>((up - 2.0L * base + dn) / (eps * eps)) - exact2);
    }
    auto order = [](const std::array<double, 3>& e) {
        return std::min(std::log2(e[0] / e[1]), std::log2(e[1] / e[2]));
    };
    c.first_order = order(c.first_error);
    c.second_order = order(c.second_error);
    return c;
}

}  // namespace sharpfr::deficit
