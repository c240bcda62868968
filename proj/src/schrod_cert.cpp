#include "sharpfr/schrod_cert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sharpfr/deficit.hpp"
#include "sharpfr/errors.hpp"
#include "sharpfr/quadrature.hpp"
#include "sharpfr/specfun.hpp"

namespace sharpfr::schrod {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEnvelopeBand = 0.05;
constexpr double kMethodAgreement = 1e-8;

void check_m(int m, int limit, const char* name) {
    if (m < 0 || m > limit) {
        throw DomainError(std::string(name) + ": m out of range: " + std::to_string(m));
    }
}

double log_sum_exp(const std::vector<double>& logs) {
    const double top = *std::max_element(logs.begin(), logs.end());
    double s = 0.0;
    for (double l : logs) s += std::exp(l - top);
    return top + std::log(s);
}

}  // namespace

SchrodParams SchrodParams::make(int d) {
    if (d < 1) throw DomainError("paraboloid setting needs d >= 1, got " + std::to_string(d));
    SchrodParams s;
    s.d = d;
    s.p = 2.0 + 4.0 / d;
    s.nu = 0.5 * d - 1.0;
    if (d == 2) {
        s.z = std::numeric_limits<double>::quiet_NaN();
        s.x = s.z;
    } else {
        s.z = 1.0 / (1.0 - 4.0 / s.p);
        s.x = 0.5 * (s.z + 1.0 / s.z);
    }
    return s;
}

StrichartzConstant strichartz_constant(int d) {
    if (d < 1) throw DomainError("strichartz_constant: d must be positive");
    const double denom = 8.0 + 4.0 * d;
    const double log_a = -(d / denom) * std::log(4.0) - (double(d) * d / denom) * std::log1p(2.0 / d);
    return {d, std::exp(log_a)};
}

double cm_sum(const SchrodParams& params, int m) {
    check_m(m, 10000, "cm_sum");
    const double q = 2.0 / params.p;
    const double log_a = std::log1p(-q);
    const double log_b = std::log(q);
    std::vector<double> logs(static_cast<std::size_t>(m) + 1);
    for (int j = 0; j <= m; ++j) {
        logs[j] = specfun::ln_binom(m + params.nu, m - j) + specfun::ln_binom(m, j) +
                  2.0 * (m - j) * log_a + 2.0 * j * log_b;
    }
    return 0.5 * params.p * std::exp(log_sum_exp(logs));
}

double cm_closed_p4(int m) {
    check_m(m, 10000, "cm_closed_p4");
    return 2.0 * std::exp(specfun::ln_binom(2.0 * m, m) - m * std::log(4.0));
}

double cm_jacobi(const SchrodParams& params, int m) {
    if (params.d == 2) throw DomainError("cm_jacobi: the Jacobi form needs p != 4 (d != 2)");
    check_m(m, 1000, "cm_jacobi");
    return 0.5 * params.p * specfun::jacobi_p_scaled(m, params.nu, 0.0, params.x, params.z);
}

CertifiedValue cm_quad(const SchrodParams& params, int m, double tol) {
    check_m(m, 500, "cm_quad");
    const double q = 2.0 / params.p;
    const double nu = params.nu;
    // |L_m(q r)| <= sum_j C(m+nu, m-j) q^j r^j / j! <= S (1 + r)^m
    double s = 0.0;
    for (int j = 0; j <= m; ++j) {
        s += std::exp(specfun::ln_binom(m + nu, m - j) + j * std::log(q) - std::lgamma(j + 1.0));
    }
    const double norm = specfun::laguerre_at_zero(m, nu);
    const double scale = 0.5 * params.p / norm;
    auto f = [&](double r) {
        const double l = specfun::laguerre(m, nu, q * r);
        return l * l;
    };
    const CertifiedValue raw = quad::integrate_mu(f, nu, tol / scale, {s * s, 2.0 * m});
    return {raw.value * scale, raw.err_bound * scale, 0.0};
}

CmCertificate cm_certificate(int d, int m_max, double tol, int quad_m_max) {
    if (m_max < 2) throw DomainError("cm_certificate: m_max must be at least 2");
    const SchrodParams sp = SchrodParams::make(d);
    CmCertificate cert;
    cert.d = d;
    cert.m_max = m_max;
    cert.report.subject = "paraboloid d=" + std::to_string(d);

    double max_cm = -std::numeric_limits<double>::infinity();
    for (int m = 0; m <= m_max; ++m) {
        CmRow row;
        row.m = m;
        row.cm = cm_sum(sp, m);
        double lo = row.cm, hi = row.cm;
        if (d == 2) {
            const double c = cm_closed_p4(m);
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        } else if (m <= 1000) {
            const double c = cm_jacobi(sp, m);
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
        if (m <= quad_m_max) {
            const double c = cm_quad(sp, m, tol).value;
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
        row.method_spread = hi - lo;
        if (row.method_spread > kMethodAgreement) {
            cert.report.add({"method agreement, m=" + std::to_string(m), row.method_spread,
                             kMethodAgreement, Verdict::Inconclusive});
        }
        if (m >= 2) {
            max_cm = std::max(max_cm, row.cm);
            if (!(row.cm < 1.0 - 1e-12)) {
                cert.report.add({"c_m < 1, m=" + std::to_string(m), row.cm, 1.0, Verdict::Fail});
            }
        }
        cert.per_m.push_back(row);
    }
    cert.min_gap = 1.0 - max_cm;
    cert.report.add({"max_{m>=2} c_m < 1", max_cm, 1.0, max_cm < 1.0 - 1e-12 ? Verdict::Pass : Verdict::Fail});

    // Decay envelope: c_m sqrt(m) should settle near a constant.
    double env_lo = std::numeric_limits<double>::infinity(), env_hi = 0.0;
    double first = 0.0, last = 0.0;
    for (int m = std::max(2, m_max / 2); m <= m_max; ++m) {
        const double e = cert.per_m[m].cm * std::sqrt(static_cast<double>(m));
        if (m == std::max(2, m_max / 2)) first = e;
        last = e;
        env_lo = std::min(env_lo, e);
        env_hi = std::max(env_hi, e);
    }
    cert.envelope_spread = (env_hi - env_lo) / env_hi;
    cert.report.add({"c_m sqrt(m) relative spread over top half", cert.envelope_spread, kEnvelopeBand,
                     cert.envelope_spread < kEnvelopeBand ? Verdict::Pass : Verdict::Inconclusive});
    cert.report.flags.push_back(std::string("c_m sqrt(m) is ") +
                                (last > first ? "increasing" : "non-increasing") +
                                " over the top half of the range");
    cert.report.epsilon = cert.min_gap;
    return cert;
}

double laguerre_scaling_check(int m, double nu, double lambda, double x) {
    check_m(m, 200, "laguerre_scaling_check");
    auto normalized = [nu](int j, double y) {
        return specfun::laguerre(j, nu, y) / specfun::laguerre(j, nu, 0.0);
    };
    double rhs = 0.0;
    for (int j = 0; j <= m; ++j) {
        const double coeff = std::exp(specfun::ln_binom(m, j)) * std::pow(1.0 - lambda, m - j) *
                             std::pow(lambda, j);
        if (coeff != 0.0) rhs += coeff * normalized(j, x);
    }
    return std::abs(normalized(m, lambda * x) - rhs);
}

double laguerre_mode(int d, int m, double radius) {
    const double r2 = radius * radius;
    return specfun::laguerre(m, 0.5 * d - 1.0, 2.0 * kPi * r2) * std::exp(-kPi * r2);
}

double hermite_mode(const std::vector<int>& n, const std::vector<double>& x) {
    if (n.size() != x.size()) throw DomainError("hermite_mode: index and point dimensions differ");
    const double s4 = std::sqrt(4.0 * kPi);
    double prod = 1.0, r2 = 0.0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        prod *= specfun::hermite_monic(n[i], s4 * x[i]);
        r2 += x[i] * x[i];
    }
    return prod * std::exp(-kPi * r2);
}

namespace {

// (1 + 4 pi i t)^{-d/2}, 1/sqrt(1 + 16 pi^2 t^2), arg(1 + 4 pi i t), and the chirp phase.
struct FlowFactors {
    std::complex<double> amplitude;
    double shrink;
    double theta;
    std::complex<double> chirp;
};

FlowFactors flow_factors(int d, double t, double r2) {
    const std::complex<double> w(1.0, 4.0 * kPi * t);
    const double s = 1.0 + 16.0 * kPi * kPi * t * t;
    return {std::pow(w, -0.5 * d), 1.0 / std::sqrt(s), std::arg(w),
            std::polar(1.0, 4.0 * kPi * kPi * t * r2 / s)};
}

}  // namespace

std::complex<double> schrod_evolve_laguerre(int d, int m, double t, double radius) {
    if (d < 1) throw DomainError("schrod_evolve_laguerre: d must be positive");
    const FlowFactors ff = flow_factors(d, t, radius * radius);
    // ((1 - 4 pi i t)/(1 + 4 pi i t))^m = e^{-2 i m theta}
    return ff.amplitude * std::polar(1.0, -2.0 * m * ff.theta) *
           laguerre_mode(d, m, radius * ff.shrink) * ff.chirp;
}

std::complex<double> schrod_evolve_hermite(int d, const std::vector<int>& n, double t,
                                           const std::vector<double>& x) {
    if (d < 1 || n.size() != static_cast<std::size_t>(d) || x.size() != static_cast<std::size_t>(d)) {
        throw DomainError("schrod_evolve_hermite: index and point must have length d");
    }
    int total = 0;
    double r2 = 0.0;
    for (int i = 0; i < d; ++i) {
        if (n[i] < 0) throw DomainError("schrod_evolve_hermite: negative index");
        total += n[i];
        r2 += x[i] * x[i];
    }
    const FlowFactors ff = flow_factors(d, t, r2);
    std::vector<double> y(x);
    for (double& v : y) v *= ff.shrink;
    // ((1 - 4 pi i t)/(1 + 4 pi i t))^{|n|/2} = e^{-i |n| theta}
    return ff.amplitude * std::polar(1.0, -total * ff.theta) * hermite_mode(n, y) * ff.chirp;
}

LensCheck lens_model_check(int d, int m_max, int radial_nodes, int time_nodes, double tol) {
    if (m_max < 2 || m_max > 40) throw DomainError("lens_model_check: m_max must lie in [2, 40]");
    if (radial_nodes < m_max + 1) throw DomainError("lens_model_check: need radial_nodes > m_max");
    if (time_nodes < 4 * m_max) throw DomainError("lens_model_check: need time_nodes >= 4 m_max");
    const SchrodParams sp = SchrodParams::make(d);
    const int n = m_max + 1;
    const auto& rule = quad::gauss_laguerre(radial_nodes, sp.nu);
    const int grid = radial_nodes * time_nodes;

    Eigen::MatrixXcd op(grid, n);
    Eigen::VectorXd weights(grid);
    const double q = 2.0 / sp.p;
    for (int i = 0; i < radial_nodes; ++i) {
        for (int j = 0; j < time_nodes; ++j) {
            const int row = i * time_nodes + j;
            const double s = -0.5 + (j + 0.5) / time_nodes;
            weights[row] = rule.weights[i] / time_nodes;
            for (int m = 0; m < n; ++m) {
                op(row, m) = specfun::laguerre(m, sp.nu, q * rule.nodes[i]) *
                             std::polar(1.0, -2.0 * kPi * m * s);
            }
        }
    }
    Eigen::VectorXd metric(n);
    for (int m = 0; m < n; ++m) metric[m] = specfun::laguerre_at_zero(m, sp.nu);
    Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(n);
    e0[0] = 1.0;
    const deficit::DiscreteDeficitModel model(metric, op, weights, sp.p, e0);

    LensCheck out;
    const Eigen::MatrixXd h = deficit::hessian_matrix(model, e0);
    const deficit::VariationReport vr = deficit::variation_report(model, e0);
    out.gradient_norm = std::sqrt(vr.gradient_re.squaredNorm() + vr.gradient_im.squaredNorm());
    out.model_scale = h.diagonal().cwiseAbs().maxCoeff();

    for (int m = 2; m < n; ++m) {
        const double expected = 2.0 * (1.0 - cm_sum(sp, m)) * metric[m];
        out.diagonal_ratio.push_back(h(m, m) / expected);
        out.diagonal_ratio.push_back(h(n + m, n + m) / expected);
    }
    double diag_scale = 0.0;
    for (int a = 0; a < 2 * n; ++a) {
        if (a % n < 2) continue;
        diag_scale = std::max(diag_scale, std::abs(h(a, a)));
        for (int b = 0; b < 2 * n; ++b) {
            if (b % n < 2 || a == b) continue;
            out.max_offdiag = std::max(out.max_offdiag, std::abs(h(a, b)));
        }
    }
    out.diagonal_scale = diag_scale;

    CertReport& rep = out.report;
    rep.subject = "lens model d=" + std::to_string(d);
    const double grad_limit = 1e-6 * out.model_scale;
    rep.add({"gradient at the Gaussian", out.gradient_norm, grad_limit,
             out.gradient_norm < grad_limit ? Verdict::Pass : Verdict::Fail});
    for (int m = 2; m < n; ++m) {
        for (int part = 0; part < 2; ++part) {
            const double dev = std::abs(out.diagonal_ratio[2 * (m - 2) + part] - 1.0);
            rep.add({"hessian diagonal / 2(1-c_m)L_m(0), m=" + std::to_string(m) + (part ? " (imag)" : " (real)"),
                     dev, tol, dev < tol ? Verdict::Pass : Verdict::Fail});
        }
    }
    const double off_limit = 1e-6 * diag_scale;
    rep.add({"off-diagonal hessian, modes >= 2", out.max_offdiag, off_limit,
             out.max_offdiag < off_limit ? Verdict::Pass : Verdict::Fail});
    return out;
}

}  // namespace sharpfr::schrod
