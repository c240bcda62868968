#include "sharpfr/sphere_cert.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>

#include "sharpfr/errors.hpp"
#include "sharpfr/linalg.hpp"
#include "sharpfr/parallel.hpp"
#include "sharpfr/quadrature.hpp"
#include "sharpfr/specfun.hpp"

namespace sharpfr::sphere {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSmallArg = 2.0;
constexpr int kMaxK = 64;
constexpr int kCertifiedMaxD = 60;

bool is_even_integer(double a) {
    const double r = std::round(a);
    return a == r && std::fmod(r, 2.0) == 0.0;
}

const std::vector<double>& cached_zeros(double nu, double radius) {
    static std::mutex mutex;
    static std::map<std::pair<double, double>, std::vector<double>> cache;
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find({nu, radius});
        if (it != cache.end()) return it->second;
    }
    std::vector<double> zeros = specfun::bessel_zeros(nu, radius);
    std::lock_guard<std::mutex> lock(mutex);
    return cache.emplace(std::pair{nu, radius}, std::move(zeros)).first->second;
}

double sum_in_order(const std::vector<double>& xs) {
    double s = 0.0, comp = 0.0;
    for (double x : xs) {
        const double y = x - comp;
        const double t = s + y;
        comp = (t - s) - y;
        s = t;
    }
    return s;
}

std::string k_label(const char* what, int k) {
    return std::string(what) + ", k=" + std::to_string(k);
}

}  // namespace

SphereParams SphereParams::make(int d) {
    if (d < 2) throw DomainError("sphere setting needs d >= 2, got " + std::to_string(d));
    SphereParams s;
    s.d = d;
    s.p = 2.0 * (d + 1) / (d - 1.0);
    s.nu = 0.5 * d - 1.0;
    s.lambda = (3.0 * d - 5.0) / (3.0 * d - 3.0);
    return s;
}

CertifiedValue ck_estimate(const SphereParams& params, int k, double radius, double tol,
                           bool allow_uncertified_d) {
    if (k < 0 || k > kMaxK) throw DomainError("ck_estimate: k must lie in [0, 64]");
    if (params.d > kCertifiedMaxD && !allow_uncertified_d) {
        throw DomainError("ck_estimate: d > 60 is outside the certified range");
    }
    if (!(radius >= 1.5 * (params.nu + k)) || !(radius > kSmallArg)) {
        throw DomainError("ck_estimate: R must be at least (3/2)(nu + k) for the tail majorant");
    }
    if (!(tol > 0.0)) throw DomainError("ck_estimate: tol must be positive");

    const double nu = params.nu;
    const double mu = nu + k;
    const double a = params.p - 2.0;
    const double small_power = 2.0 * nu + 1.0 + 2.0 * k;
    const double large_power = 1.0 - nu * a;
    auto f = [=](double r) {
        if (r <= kSmallArg) {
            const double an = specfun::detail::bessel_a(nu, r);
            const double am = specfun::detail::bessel_a(mu, r);
            return std::pow(std::abs(an), a) * am * am * std::pow(r, small_power);
        }
        const double jn = specfun::detail::bessel_j(nu, r);
        const double jm = specfun::detail::bessel_j(mu, r);
        return std::pow(std::abs(jn), a) * jm * jm * std::pow(r, large_power);
    };

    double value = 0.0;
    double quad_err = 0.0;
    if (is_even_integer(a)) {
        quad::AdaptiveOptions opts;
        opts.max_panel_width = 0.5 * kPi;
        const auto res = quad::integrate_adaptive(f, 0.0, radius, tol, opts);
        value = res.value;
        quad_err = res.err_bound;
    } else {
        // |J_nu|^a has algebraic cusps at the zeros of J_nu: integrate zero to zero.
        const auto& zeros = cached_zeros(nu, radius);
        std::vector<double> edges;
        edges.reserve(zeros.size() + 2);
        edges.push_back(0.0);
        edges.insert(edges.end(), zeros.begin(), zeros.end());
        edges.push_back(radius);
        const std::size_t pieces = edges.size() - 1;
        const double piece_tol = tol / static_cast<double>(pieces);
        std::vector<double> values(pieces);
        for (std::size_t i = 0; i < pieces; ++i) {
            const double alpha_lo = i == 0 ? 0.0 : a;
            const double alpha_hi = i + 1 == pieces ? 0.0 : a;
            const auto res = quad::integrate_algebraic_endpoints(f, edges[i], edges[i + 1], alpha_lo,
                                                                 alpha_hi, piece_tol);
            values[i] = res.value;
            quad_err += res.err_bound;
        }
        value = sum_in_order(values);
    }
    const double tail = quad::tail_power_bound(1.0, 2.0, radius);
    return {value, quad_err + tail, tail};
}

double bk_upper(const SphereParams& params, int k) {
    if (k < 0) throw DomainError("bk_upper: k must be nonnegative");
    const double lam = params.lambda;
    const double shift = params.nu + k;
    const double log_b = (params.p - 2.0) * std::log(kLandau) + std::lgamma(lam) +
                         std::lgamma(shift + 0.5 * (1.0 - lam)) - lam * std::log(2.0) -
                         2.0 * std::lgamma(0.5 * (1.0 + lam)) - std::lgamma(shift + 0.5 * (1.0 + lam));
    return std::exp(log_b);
}

bool bk_decreasing_check(const SphereParams& params, int k_max) {
    if (k_max < 2) throw DomainError("bk_decreasing_check: k_max must be at least 2");
    double prev = bk_upper(params, 1);
    for (int k = 2; k <= k_max; ++k) {
        const double cur = bk_upper(params, k);
        if (!(prev > cur)) return false;
        prev = cur;
    }
    return true;
}

IdentityCheck remarkable_identity(const SphereParams& params, double radius, double tol) {
    const CertifiedValue c0 = ck_estimate(params, 0, radius, tol);
    const CertifiedValue c1 = ck_estimate(params, 1, radius, tol);
    const double pm1 = params.p - 1.0;
    return {std::abs(c0.value - pm1 * c1.value) / c0.value,
            (c0.err_bound + pm1 * c1.err_bound) / c0.value};
}

double remarkable_identity_residual(const SphereParams& params, double radius, double tol) {
    return remarkable_identity(params, radius, tol).residual;
}

double c0_tail_estimate(const SphereParams& params, double radius) {
    const double p = params.p;
    const double mean_cos_p = std::exp(std::lgamma(0.5 * (p + 1.0)) - std::lgamma(0.5 * p + 1.0)) /
                              std::sqrt(kPi);
    return mean_cos_p * std::pow(2.0 / kPi, 0.5 * p) / radius;
}

CertifiedValue tomas_stein_constant(const SphereParams& params, double tol, double radius) {
    const CertifiedValue c0 = ck_estimate(params, 0, radius, tol, true);
    const double tail_hat = c0_tail_estimate(params, radius);
    const double tail_max = c0.tail_bound;
    const double quad_err = c0.err_bound - c0.tail_bound;
    const double c = c0.value + tail_hat;
    const double c_err = quad_err + std::max(tail_hat, tail_max - tail_hat);
    const int d = params.d;
    const double pref = std::pow(2.0 * kPi, 0.5 * d) *
                        std::pow(specfun::sphere_area(d - 1), -1.0 / (d + 1.0));
    const double inv_p = 1.0 / params.p;
    const double value = pref * std::pow(c, inv_p);
    // x^{1/p} is concave, so the lower deviation dominates.
    const double err = value - pref * std::pow(std::max(c - c_err, 0.0), inv_p);
    return {value, err, 0.0};
}

KSplit default_k_split(int d) {
    if (d <= 2) return {6, 7, true};
    if (d == 3) return {7, 8, false};
    if (d <= 5) return {4, 5, false};
    return {3, 4, false};
}

SphereSweepRow sweep_dimension(int d, const GapOptions& opts, bool allow_uncertified_d) {
    SphereSweepRow row;
    row.params = SphereParams::make(d);
    row.split = opts.split;
    if (row.split.k_numeric < 2 || (!row.split.tail_cited && row.split.k_tail != row.split.k_numeric + 1)) {
        throw DomainError("gap certificate needs k_numeric >= 2 and k_tail = k_numeric + 1");
    }
    row.c0 = ck_estimate(row.params, 0, opts.radius, opts.tol, allow_uncertified_d);
    for (int k = 2; k <= row.split.k_numeric; ++k) {
        row.ck.push_back(ck_estimate(row.params, k, opts.radius, opts.tol, allow_uncertified_d));
    }
    return row;
}

std::vector<SphereSweepRow> sweep(int d_min, int d_max, double radius, double tol, int jobs,
                                  bool allow_uncertified_d) {
    if (d_min < 2 || d_min > d_max) throw DomainError("sweep: need 2 <= d_min <= d_max");
    std::vector<SphereSweepRow> rows;
    struct Cell {
        std::size_t row;
        int k;
    };
    std::vector<Cell> cells;
    for (int d = d_min; d <= d_max; ++d) {
        SphereSweepRow row;
        row.params = SphereParams::make(d);
        row.split = default_k_split(d);
        row.ck.resize(static_cast<std::size_t>(row.split.k_numeric - 1));
        cells.push_back({rows.size(), 0});
        for (int k = 2; k <= row.split.k_numeric; ++k) cells.push_back({rows.size(), k});
        rows.push_back(std::move(row));
    }
    std::vector<CertifiedValue> values(cells.size());
    parallel_for(cells.size(), jobs, [&](std::size_t i) {
        values[i] = ck_estimate(rows[cells[i].row].params, cells[i].k, radius, tol, allow_uncertified_d);
    });
    for (std::size_t i = 0; i < cells.size(); ++i) {
        auto& row = rows[cells[i].row];
        if (cells[i].k == 0) {
            row.c0 = values[i];
        } else {
            row.ck[static_cast<std::size_t>(cells[i].k - 2)] = values[i];
        }
    }
    return rows;
}

CertReport gap_certificate(const SphereSweepRow& row, int bk_horizon) {
    const SphereParams& sp = row.params;
    CertReport report;
    report.subject = "sphere d=" + std::to_string(sp.d);
    const double pm1 = sp.p - 1.0;
    const double c0_lo = row.c0.lower();
    const double c0_hi = row.c0.upper();
    for (std::size_t i = 0; i < row.ck.size(); ++i) {
        const int k = static_cast<int>(i) + 2;
        const CertifiedValue& ck = row.ck[i];
        Inequality ineq{k_label("(p-1) c_k < c_0", k), pm1 * ck.upper(), c0_lo, Verdict::Pass};
        if (!(ineq.lhs < ineq.rhs)) {
            ineq.verdict = pm1 * ck.lower() > c0_hi ? Verdict::Fail : Verdict::Inconclusive;
        }
        report.add(std::move(ineq));
    }
    if (row.split.tail_cited) {
        report.flags.push_back("k >= " + std::to_string(row.split.k_numeric + 1) +
                               " relies on a cited external bound, not computed here");
    } else {
        const int kt = row.split.k_tail;
        Inequality ineq{k_label("(p-1) b_k < c_0", kt), pm1 * bk_upper(sp, kt), c0_lo, Verdict::Pass};
        if (!(ineq.lhs < ineq.rhs)) ineq.verdict = Verdict::Inconclusive;
        report.add(std::move(ineq));
        if (bk_decreasing_check(sp, std::max(bk_horizon, kt + 1))) {
            report.flags.push_back("b_k decreasing verified for k <= " +
                                   std::to_string(std::max(bk_horizon, kt + 1)));
        } else {
            report.flags.push_back("b_k not decreasing within the checked horizon");
            report.verdict = worst(report.verdict, Verdict::Inconclusive);
        }
    }
    if (sp.d > kCertifiedMaxD) {
        report.flags.push_back("uncertified: d > 60");
        report.verdict = worst(report.verdict, Verdict::Inconclusive);
    }
    return report;
}

CertReport gap_certificate(const SphereParams& params, const GapOptions& opts) {
    return gap_certificate(sweep_dimension(params.d, opts), opts.bk_horizon);
}

KernelSpectrum kernel_spectrum(const SphereParams& params, int k, double t,
                               const std::vector<double>& points) {
    if (k < 0 || k > 50) throw DomainError("kernel_spectrum: k must lie in [0, 50]");
    const std::size_t n = points.size();
    if (n == 0 || n > 200) throw DomainError("kernel_spectrum: need 1..200 points");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(points[i] > 0.0)) throw DomainError("kernel_spectrum: points must be positive");
        for (std::size_t j = 0; j < i; ++j) {
            if (points[i] == points[j]) throw DomainError("kernel_spectrum: points must be distinct");
        }
    }
    if (k == 0) return {0.0, 0.0};

    const double nu = params.nu;
    const double p_paraboloid = 2.0 + 4.0 / params.d;
    const double amp = (1.0 + t * t) / (p_paraboloid - 2.0);
    Eigen::MatrixXcd gram(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double r1 = points[i], r2 = points[j];
            const double base = -amp * (r1 * r1 + r2 * r2);
            const double cross = amp * r1 * r2;
            // alpha = cos(theta) turns (1 - alpha^2)^{nu - 1/2} d alpha into sin^{2 nu} d theta
            auto g = [&](double theta) {
                const double alpha = std::cos(theta);
                const double bracket = 1.0 - specfun::gegenbauer_ratio(k, nu, alpha);
                const double s = std::sin(theta);
                const double weight = nu == 0.0 ? 1.0 : std::pow(s, 2.0 * nu);
                return std::exp(base + cross * alpha) * bracket * weight;
            };
            const double scale = 2.0 * kPi * std::exp(base + cross);
            const double entry = quad::integrate_adaptive(g, 0.0, kPi, 1e-14 * scale + 1e-300).value;
            const std::complex<double> phase = std::polar(1.0, -kPi * t * (r1 * r1 - r2 * r2));
            const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
            gram(ii, jj) = entry * phase;
            gram(jj, ii) = std::conj(gram(ii, jj));
        }
    }
    return {linalg::hermitian_min_eigenvalue(gram), gram.norm()};
}

double kernel_psd_min_eig(const SphereParams& params, int k, double t,
                          const std::vector<double>& points) {
    return kernel_spectrum(params, k, t, points).min_eigenvalue;
}

SphereTables emit_tables(const std::vector<SphereSweepRow>& rows) {
    SphereTables out{
        CoeffTable({{"d"}, {"pm1_bk_threshold"}, {"k_threshold"}, {"c0_tilde"},
                    {"c0_value", true}, {"c0_err_bound", true}}),
        CoeffTable({{"d"}, {"k"}, {"pm1_ck_upper"}, {"c0_tilde"},
                    {"ck_value", true}, {"ck_err_bound", true}}),
    };
    for (const auto& row : rows) {
        const auto d = static_cast<std::int64_t>(row.params.d);
        const double pm1 = row.params.p - 1.0;
        const Decimal5 c0_tilde = Decimal5::round_down(row.c0.value);
        Cell threshold, k_threshold;
        if (!row.split.tail_cited) {
            threshold = Decimal5::round_up(pm1 * bk_upper(row.params, row.split.k_tail));
            k_threshold = static_cast<std::int64_t>(row.split.k_tail);
        }
        out.thresholds.add_row({d, threshold, k_threshold, c0_tilde, row.c0.value, row.c0.err_bound});
        for (std::size_t i = 0; i < row.ck.size(); ++i) {
            const auto& ck = row.ck[i];
            out.cells.add_row({d, static_cast<std::int64_t>(i + 2),
                               Decimal5::round_up(pm1 * (ck.value + kTableSlack)), c0_tilde,
                               ck.value, ck.err_bound});
        }
    }
    return out;
}

SphereTables emit_tables(int d_min, int d_max, double radius, double tol, int jobs) {
    return emit_tables(sweep(d_min, d_max, radius, tol, jobs));
}

}  // namespace sharpfr::sphere
