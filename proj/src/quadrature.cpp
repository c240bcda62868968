#include "sharpfr/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "sharpfr/errors.hpp"

namespace sharpfr::quad {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
    double a = 0.0;
    double b = 0.0;
    double value = 0.0;
    double err = 0.0;
};

// Heap order: largest error first, ties broken by position so the refinement order is fixed.
bool panel_less(const Panel& x, const Panel& y) {
    if (x.err != y.err) return x.err < y.err;
    return x.a > y.a;
}

Panel gk15(const Integrand& f, double a, double b) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    static const auto& xk = GK::abscissa();  // nonnegative nodes, centre first
    static const auto& wk = GK::weights();
    static const auto& wg = boost::math::quadrature::gauss<double, 7>::weights();

    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = wk[0] * fc;
    double gauss = wg[0] * fc;
    double absum = std::abs(kron);
    for (std::size_t i = 1; i < xk.size(); ++i) {
        const double f1 = f(c - h * xk[i]);
        const double f2 = f(c + h * xk[i]);
        kron += wk[i] * (f1 + f2);
        absum += wk[i] * (std::abs(f1) + std::abs(f2));
        if (i % 2 == 0) gauss += wg[i / 2] * (f1 + f2);
    }
    if (!std::isfinite(kron)) {
        throw DomainError("integrand is not finite on [" + std::to_string(a) + ", " +
                          std::to_string(b) + "]");
    }
    const double err = std::max(std::abs(kron - gauss), 50.0 * kEps * absum);
    return {a, b, kron * h, err * std::abs(h)};
}

double neumaier_sum(const std::vector<double>& xs) {
    double sum = 0.0, comp = 0.0;
    for (double x : xs) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    return sum + comp;
}

GaussRule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag, double mu0) {
    const int n = static_cast<int>(diag.size());
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    if (n == 1) {
        rule.nodes[0] = diag[0];
        rule.weights[0] = mu0;
        return rule;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, offdiag, Eigen::ComputeEigenvectors);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = solver.eigenvalues()[i];
        const double v = solver.eigenvectors()(0, i);
        rule.weights[i] = mu0 * v * v;
    }
    return rule;
}

GaussRule build_jacobi(int n, double a, double b) {
    Eigen::VectorXd diag(n), off(std::max(n - 1, 0));
    const double ab = a + b;
    for (int i = 0; i < n; ++i) {
        const double s = 2.0 * i + ab;
        diag[i] = (i == 0) ? (b - a) / (ab + 2.0) : (b * b - a * a) / (s * (s + 2.0));
    }
    for (int i = 1; i < n; ++i) {
        const double s = 2.0 * i + ab;
        double beta;
        if (i == 1) {
            beta = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        } else {
            beta = 4.0 * i * (i + a) * (i + b) * (i + ab) / (s * s * (s + 1.0) * (s - 1.0));
        }
        off[i - 1] = std::sqrt(beta);
    }
    const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                                std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));
    return golub_welsch(diag, off, mu0);
}

GaussRule build_laguerre(int n, double nu) {
    Eigen::VectorXd diag(n), off(std::max(n - 1, 0));
    for (int i = 0; i < n; ++i) diag[i] = 2.0 * i + nu + 1.0;
    for (int i = 1; i < n; ++i) off[i - 1] = std::sqrt(i * (i + nu));
    return golub_welsch(diag, off, 1.0);
}

using RuleKey = std::tuple<int, int, double, double>;

const GaussRule& cached_rule(int kind, int n, double a, double b) {
    static std::mutex mutex;
    static std::map<RuleKey, std::unique_ptr<GaussRule>> cache;
    if (n < 1) throw DomainError("Gauss rule needs at least one node");
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{kind, n, a, b}];
    if (!slot) {
        slot = std::make_unique<GaussRule>(kind == 0 ? build_jacobi(n, a, b) : build_laguerre(n, a));
    }
    return *slot;
}

constexpr int kLowOrder = 20;
constexpr int kHighOrder = 40;
constexpr int kMaxDepth = 48;

double jacobi_piece(const Integrand& f, const GaussRule& rule, double c, double h, double alpha_lo,
                    double alpha_hi) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = rule.nodes[i];
        double w = 1.0;
        if (alpha_hi != 0.0) w *= std::pow(1.0 - x, alpha_hi);
        if (alpha_lo != 0.0) w *= std::pow(1.0 + x, alpha_lo);
        s += rule.weights[i] * f(c + h * x) / w;
    }
    return s * h;
}

void algebraic_recurse(const Integrand& f, double lo, double hi, double alpha_lo, double alpha_hi,
                       double tol, int depth, std::vector<double>& values, double& err, int& pieces) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    const double q_low =
        jacobi_piece(f, gauss_jacobi(kLowOrder, alpha_hi, alpha_lo), c, h, alpha_lo, alpha_hi);
    const double q_high =
        jacobi_piece(f, gauss_jacobi(kHighOrder, alpha_hi, alpha_lo), c, h, alpha_lo, alpha_hi);
    if (!std::isfinite(q_high)) {
        throw DomainError("integrand is not finite on [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
    }
    const double e = std::abs(q_high - q_low) + 50.0 * kEps * std::abs(q_high);
    if (e <= tol) {
        values.push_back(q_high);
        err += e;
        ++pieces;
        return;
    }
    if (depth >= kMaxDepth) {
        throw ConvergenceError("algebraic-endpoint quadrature did not converge on [" +
                                   std::to_string(lo) + ", " + std::to_string(hi) + "]",
                               q_high, e);
    }
    algebraic_recurse(f, lo, c, alpha_lo, 0.0, 0.5 * tol, depth + 1, values, err, pieces);
    algebraic_recurse(f, c, hi, 0.0, alpha_hi, 0.5 * tol, depth + 1, values, err, pieces);
}

}  // namespace

QuadResult integrate_adaptive(const Integrand& f, double a, double b, double tol,
                              const AdaptiveOptions& opts) {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("integrate_adaptive: need finite a < b");
    }
    if (!(tol > 0.0)) throw DomainError("integrate_adaptive: tol must be positive");

    std::int64_t initial = 1;
    if (std::isfinite(opts.max_panel_width) && opts.max_panel_width > 0.0) {
        initial = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil((b - a) / opts.max_panel_width)));
    }
    constexpr std::int64_t kEvalsPerPanel = 15;
    if (initial * kEvalsPerPanel > opts.max_evaluations) {
        throw ConvergenceError("integrate_adaptive: initial panels exceed evaluation budget", 0.0,
                               std::numeric_limits<double>::infinity());
    }

    std::vector<Panel> heap;
    heap.reserve(static_cast<std::size_t>(initial) * 2);
    const double width = (b - a) / static_cast<double>(initial);
    double total_err = 0.0;
    for (std::int64_t i = 0; i < initial; ++i) {
        const double lo = a + width * static_cast<double>(i);
        const double hi = (i + 1 == initial) ? b : a + width * static_cast<double>(i + 1);
        heap.push_back(gk15(f, lo, hi));
        total_err += heap.back().err;
    }
    std::make_heap(heap.begin(), heap.end(), panel_less);
    std::int64_t evals = initial * kEvalsPerPanel;

    auto collect = [&heap]() {
        std::vector<Panel> panels = heap;
        std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
        std::vector<double> vals;
        vals.reserve(panels.size());
        double err = 0.0;
        for (const auto& p : panels) {
            vals.push_back(p.value);
            err += p.err;
        }
        return std::pair<double, double>{neumaier_sum(vals), err};
    };

    while (total_err > tol) {
        std::pop_heap(heap.begin(), heap.end(), panel_less);
        const Panel worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (evals + 2 * kEvalsPerPanel > opts.max_evaluations || !(worst.a < mid && mid < worst.b)) {
            heap.push_back(worst);
            const auto [value, err] = collect();
            throw ConvergenceError("integrate_adaptive: budget exhausted before reaching tolerance",
                                   value, err);
        }
        Panel left = gk15(f, worst.a, mid);
        Panel right = gk15(f, mid, worst.b);
        evals += 2 * kEvalsPerPanel;
        total_err += left.err + right.err - worst.err;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), panel_less);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), panel_less);
        if (total_err <= tol) {
            // guard against drift in the running total
            total_err = collect().second;
        }
    }
    const auto [value, err] = collect();
    return {value, err, static_cast<int>(heap.size())};
}

double tail_power_bound(double c, double s, double r) {
    if (!(s > 1.0)) throw DomainError("tail_power_bound: exponent must exceed 1");
    if (!(r > 0.0)) throw DomainError("tail_power_bound: R must be positive");
    if (c < 0.0) throw DomainError("tail_power_bound: majorant constant must be nonnegative");
    if (c == 0.0) return 0.0;
    return c * std::pow(r, 1.0 - s) / (s - 1.0);
}

CertifiedValue integrate_mu(const Integrand& f, double nu, double tol, PolyGrowth growth) {
    if (!(nu > -1.0)) throw DomainError("integrate_mu: nu must exceed -1");
    if (!(tol > 0.0)) throw DomainError("integrate_mu: tol must be positive");
    if (growth.coeff < 0.0 || growth.degree < 0.0) {
        throw DomainError("integrate_mu: growth bound must be nonnegative");
    }
    // For r >= 1: |f| r^nu e^-r <= coeff 2^D r^(D+nu) e^-r, whose tail is an upper incomplete Gamma.
    const double s = growth.degree + nu + 1.0;
    const double log_pref = std::log(std::max(growth.coeff, 1e-300)) + growth.degree * std::log(2.0) +
                            std::lgamma(s) - std::lgamma(nu + 1.0);
    auto tail = [&](double r) {
        const double q = boost::math::gamma_q(s, r);
        return q == 0.0 ? 0.0 : std::exp(log_pref + std::log(q));
    };
    double r_max = std::max(1.0, s);
    while (tail(r_max) >= 0.5 * tol) r_max *= 1.1;
    const double tail_err = growth.coeff == 0.0 ? 0.0 : tail(r_max);

    // r = u^2 turns r^nu dr into 2 u^(2 nu + 1) du, which is bounded for nu >= -1/2.
    const double log_norm = std::log(2.0) - std::lgamma(nu + 1.0);
    auto g = [&](double u) {
        const double r = u * u;
        return f(r) * std::exp(log_norm + (2.0 * nu + 1.0) * std::log(u) - r);
    };
    const QuadResult body = integrate_adaptive(g, 0.0, std::sqrt(r_max), 0.5 * tol);
    return {body.value, body.err_bound + tail_err, 0.0};
}

const GaussRule& gauss_jacobi(int n, double a, double b) {
    if (!(a > -1.0 && b > -1.0)) throw DomainError("gauss_jacobi: exponents must exceed -1");
    return cached_rule(0, n, a, b);
}

const GaussRule& gauss_laguerre(int n, double nu) {
    if (!(nu > -1.0)) throw DomainError("gauss_laguerre: nu must exceed -1");
    return cached_rule(1, n, nu, 0.0);
}

QuadResult integrate_algebraic_endpoints(const Integrand& f, double lo, double hi,
                                         double alpha_lo, double alpha_hi, double tol) {
    if (!(lo < hi)) throw DomainError("integrate_algebraic_endpoints: need lo < hi");
    if (!(alpha_lo > -1.0 && alpha_hi > -1.0)) {
        throw DomainError("integrate_algebraic_endpoints: exponents must exceed -1");
    }
    if (!(tol > 0.0)) throw DomainError("integrate_algebraic_endpoints: tol must be positive");
    std::vector<double> values;
    double err = 0.0;
    int pieces = 0;
    algebraic_recurse(f, lo, hi, alpha_lo, alpha_hi, tol, 0, values, err, pieces);
    return {neumaier_sum(values), err, pieces};
}

}  // namespace sharpfr::quad
