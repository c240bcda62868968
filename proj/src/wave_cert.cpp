#include "sharpfr/wave_cert.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sharpfr/errors.hpp"
#include "sharpfr/quadrature.hpp"
#include "sharpfr/specfun.hpp"

namespace sharpfr::wave {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_integer(double x) { return std::floor(x) == x; }

void require_params(const WaveParams& params) {
    if (params.d < 2) throw DomainError("wave: dimension must be at least 2");
}

}  // namespace

WaveParams WaveParams::make(int d) {
    if (d < 2) throw DomainError("wave: dimension must be at least 2");
    WaveParams w;
    w.d = d;
    w.p = 2.0 * (d + 1) / (d - 1);
    w.nu = 0.5 * (d - 1);
    w.alpha = 0.5 * w.p;
    return w;
}

double c_star(int d) {
    if (d < 3 || d % 2 == 0) throw DomainError("c_star: d must be odd and at least 3");
    const double p = 2.0 * (d + 1) / (d - 1);
    return std::sqrt(2.0 / (d - 1)) * std::pow(kPi, 1.0 / p) *
           std::pow(specfun::sphere_area(d), 1.0 / p - 0.5);
}

double time_normalization(const WaveParams& params) {
    require_params(params);
    const double p = params.p;
    return 2.0 * std::sqrt(kPi) * std::exp(std::lgamma(0.5 * (p + 1.0)) - std::lgamma(0.5 * (p + 2.0)));
}

CertifiedValue time_normalization_quad(const WaveParams& params, double tol) {
    require_params(params);
    const double nu = params.nu;
    const double p = params.p;
    const double half_period = kPi / nu;
    // zeros of cos(nu T) sit at (k + 1/2) pi / nu; |cos| vanishes like |T - zero|^p there
    std::vector<double> cuts{-kPi};
    const int k_lo = static_cast<int>(std::ceil(-kPi / half_period - 0.5));
    for (int k = k_lo;; ++k) {
        const double z = (k + 0.5) * half_period;
        if (z >= kPi) break;
        if (z > -kPi) cuts.push_back(z);
    }
    cuts.push_back(kPi);
    auto f = [&](double t) { return std::pow(std::abs(std::cos(nu * t)), p); };
    const double share = tol / static_cast<double>(cuts.size());
    CertifiedValue out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const bool lo_zero = std::abs(std::cos(nu * cuts[i])) < 1e-12;
        const bool hi_zero = std::abs(std::cos(nu * cuts[i + 1])) < 1e-12;
        const auto r = quad::integrate_algebraic_endpoints(f, cuts[i], cuts[i + 1], lo_zero ? p : 0.0,
                                                           hi_zero ? p : 0.0, share);
        out.value += r.value;
        out.err_bound += r.err_bound;
    }
    return out;
}

double cosine_coeff(double alpha, int h) {
    if (!(alpha > -0.5)) throw DomainError("cosine_coeff: alpha must exceed -1/2");
    if (h < 0) throw DomainError("cosine_coeff: h must be nonnegative");
    const double base = std::lgamma(alpha + 0.5) - 0.5 * std::log(kPi);
    if (h == 0) return std::exp(base - std::lgamma(alpha + 1.0));
    const double c = specfun::binom_real(alpha, h);
    if (c == 0.0) return 0.0;
    return 2.0 * c * std::exp(base + std::lgamma(h + 1.0) - std::lgamma(alpha + h + 1.0));
}

double fourier_series_residual(double alpha, double beta, int h_max, const std::vector<double>& grid) {
    if (h_max < 0) throw DomainError("fourier_series_residual: h_max must be nonnegative");
    std::vector<double> a(static_cast<std::size_t>(h_max) + 1);
    for (int h = 0; h <= h_max; ++h) a[h] = cosine_coeff(alpha, h);
    double worst = 0.0;
    for (double t : grid) {
        double s = a[0];
        for (int h = 1; h <= h_max; ++h) s += a[h] * std::cos(2.0 * h * beta * t);
        worst = std::max(worst, std::abs(s - std::pow(std::abs(std::cos(beta * t)), 2.0 * alpha)));
    }
    return worst;
}

double abs_gamma_ratio(double alpha, int h) {
    if (!(alpha > 0.0)) throw DomainError("abs_gamma_ratio: alpha must be positive");
    if (h < 0) throw DomainError("abs_gamma_ratio: h must be nonnegative");
    // Gamma(alpha)/Gamma(alpha-h) = prod_{j=1}^h (alpha - j), Gamma(alpha)/Gamma(alpha+h) = 1/(alpha)_h
    if (is_integer(alpha) && h >= alpha) return 0.0;
    const int j0 = static_cast<int>(std::floor(alpha));
    double log_num = 0.0;
    for (int j = 1; j <= std::min(h, j0); ++j) log_num += std::log(std::abs(alpha - j));
    if (h > j0) log_num += std::lgamma(h + 1.0 - alpha) - std::lgamma(j0 + 1.0 - alpha);
    const double log_den = std::lgamma(alpha + h) - std::lgamma(alpha);
    return std::exp(log_num - log_den);
}

double gamma_identity_residual(double p) {
    if (!(p > 1.0)) throw DomainError("gamma_identity_residual: p must exceed 1");
    const double lhs = (p - 1.0) * std::exp(std::lgamma(0.5 * (p + 2.0)) + std::lgamma(0.5 * (p - 1.0)) -
                                            std::lgamma(0.5 * (p + 1.0)) - std::lgamma(0.5 * p));
    return std::abs(lhs - p);
}

CSharpScan c_sharp_scan(const WaveParams& params, int h_max) {
    require_params(params);
    if (h_max < 1) throw DomainError("c_sharp_scan: h_max must be at least 1");
    const double p = params.p;
    CSharpScan s;
    s.values.reserve(h_max);
    for (int h = 1; h <= h_max; ++h) {
        const double c = p + p * abs_gamma_ratio(params.alpha, h);
        if (!s.values.empty() && !(c < s.values.back())) s.strictly_decreasing = false;
        if (s.values.empty() || c > s.max_value) {
            s.max_value = c;
            s.argmax = h;
        }
        s.values.push_back(c);
    }
    s.c1_scanned = s.values.front();
    s.c1_closed = p + (p - 2.0) / p;
    return s;
}

bool g_monotone_check(double alpha, int h_max) {
    if (h_max < 2) throw DomainError("g_monotone_check: h_max must be at least 2");
    auto log_g = [alpha](int h) { return std::lgamma(h - alpha + 1.0) - std::lgamma(alpha + h); };
    double prev = log_g(1);
    for (int h = 2; h <= h_max; ++h) {
        const double cur = log_g(h);
        if (!(cur < prev)) return false;
        prev = cur;
    }
    return true;
}

double mode_ratio(const WaveParams& params, int ell) {
    require_params(params);
    if (ell < 0) throw DomainError("mode_ratio: ell must be nonnegative");
    // nu_d = (d-1)/2 divides ell iff 2 ell is a multiple of d - 1
    const int two_ell = 2 * ell;
    double bracket = params.p;
    if (ell > 0 && two_ell % (params.d - 1) == 0) {
        bracket += params.p * abs_gamma_ratio(params.alpha, two_ell / (params.d - 1));
    }
    return bracket * params.nu / (ell + params.nu);
}

ModeCoercivity mode_coercivity_table(const WaveParams& params, int ell_max) {
    require_params(params);
    if (ell_max < 2) throw DomainError("mode_coercivity_table: ell_max must be at least 2");
    ModeCoercivity out{CoeffTable({{"d"}, {"ell"}, {"ratio"}, {"rho_implied"}})};
    out.rho_claimed = 1.0 / (params.nu + 1.0);
    for (int ell = 2; ell <= ell_max; ++ell) {
        const double r = mode_ratio(params, ell);
        if (ell == 2 || r > out.sup_ratio) {
            out.sup_ratio = r;
            out.argsup = ell;
        }
        out.table.add_row({std::int64_t{params.d}, std::int64_t{ell}, r, 2.0 - r});
    }
    out.rho_implied = 2.0 - out.sup_ratio;
    return out;
}

double half_wave_mode_ratio(const WaveParams& params, int ell) {
    require_params(params);
    if (ell < 2) throw DomainError("half_wave_mode_ratio: ell must be at least 2");
    return params.p * params.nu / (ell + params.nu);
}

OrthogResiduals orthog_formula_check(std::complex<double> z, int ell, int h, const WaveParams& params) {
    require_params(params);
    if (ell < 1 || h < 1) throw DomainError("orthog_formula_check: ell and h must be positive");
    const double norm = time_normalization(params);
    auto sq = [&](double t) {
        const double v = (z * std::polar(1.0, ell * t)).real();
        return v * v;
    };
    const double tol = 1e-13 * (1.0 + std::norm(z));
    quad::AdaptiveOptions opts;
    opts.max_panel_width = kPi / (2.0 * std::max<double>(ell, h * params.nu));
    const auto first = quad::integrate_adaptive(sq, -kPi, kPi, tol, opts);
    const auto second = quad::integrate_adaptive(
        [&](double t) { return std::cos(2.0 * h * params.nu * t) * sq(t); }, -kPi, kPi, tol, opts);

    const double p = params.p;
    const double g = std::sqrt(kPi) * std::exp(std::lgamma(0.5 * (p + 2.0)) - std::lgamma(0.5 * (p + 1.0)));
    const double expected_first = 0.5 * g * std::norm(z);
    const bool resonant = std::abs(ell - h * params.nu) < 1e-12;
    const double expected_second = resonant ? 0.25 * g * (z * z).real() : 0.0;

    OrthogResiduals r;
    r.first_value = first.value / norm;
    r.second_value = second.value / norm;
    r.first = std::abs(r.first_value - expected_first);
    r.second = std::abs(r.second_value - expected_second);
    return r;
}

int tangent_dim(int d) {
    if (d < 2) throw DomainError("tangent_dim: d must be at least 2");
    return 2 * (d + 2);
}

WaveAudit wave_audit(int d, int ell_max, int h_max) {
    const WaveParams params = WaveParams::make(d);
    WaveAudit a{CertReport{}, mode_coercivity_table(params, ell_max), c_sharp_scan(params, h_max), {}};
    CertReport& rep = a.report;
    rep.subject = "wave d=" + std::to_string(d);

    const double gid = gamma_identity_residual(params.p);
    rep.add({"gamma identity residual", gid, 1e-12, gid < 1e-12 ? Verdict::Pass : Verdict::Fail});

    const double tn = time_normalization(params);
    const CertifiedValue tq = time_normalization_quad(params);
    const double tn_gap = std::abs(tn - tq.value);
    rep.add({"time normalization closed form vs quadrature", tn_gap, tq.err_bound + 1e-12 * tn,
             tn_gap <= tq.err_bound + 1e-12 * tn ? Verdict::Pass : Verdict::Fail});

    rep.add({"C(h) maximized at h = 1", static_cast<double>(a.scan.argmax), 1.5,
             a.scan.argmax == 1 ? Verdict::Pass : Verdict::Fail});

    const bool g_dec = g_monotone_check(params.alpha, h_max);
    if (!g_dec) rep.flags.push_back("g(alpha, h) is not strictly decreasing on the scanned range");

    const double c1_gap = std::abs(a.scan.c1_scanned - a.scan.c1_closed);
    if (c1_gap > 1e-12) {
        rep.flags.push_back("C(1) from the Gamma-ratio scan (" + format_double(a.scan.c1_scanned) +
                            ") differs from the closed form p + (p-2)/p (" +
                            format_double(a.scan.c1_closed) + ")");
    }
    if (params.even_dimension()) {
        rep.flags.push_back("even d: nu_d is a half-integer and the full-wave identity is unavailable");
    }
    if (std::abs(a.modes.rho_implied - a.modes.rho_claimed) > 1e-12) {
        rep.flags.push_back("implied rho " + format_double(a.modes.rho_implied) +
                            " differs from 1/(nu_d + 1) = " + format_double(a.modes.rho_claimed));
    }
    rep.add({"sup over ell >= 2 of the mode ratio below 2", a.modes.sup_ratio, 2.0,
             a.modes.sup_ratio < 2.0 ? Verdict::Pass : Verdict::Inconclusive});

    nlohmann::ordered_json& j = a.json;
    j["schema"] = 1;
    j["d"] = d;
    j["p"] = params.p;
    j["nu_d"] = params.nu;
    j["even_d"] = params.even_dimension();
    if (!params.even_dimension() && d >= 3) j["c_star"] = c_star(d);
    j["time_normalization"] = {{"closed_form", tn}, {"quadrature", tq.value}, {"err_bound", tq.err_bound}};
    j["gamma_identity_residual"] = gid;
    j["c_sharp"] = {{"argmax", a.scan.argmax},
                    {"max", a.scan.max_value},
                    {"strictly_decreasing", a.scan.strictly_decreasing},
                    {"c1_scanned", a.scan.c1_scanned},
                    {"c1_closed_form", a.scan.c1_closed},
                    {"c1_discrepancy", a.scan.c1_scanned - a.scan.c1_closed},
                    {"h_max", h_max}};
    j["g_decreasing"] = g_dec;
    j["modes"] = {{"ell_max", ell_max},
                  {"sup_ratio", a.modes.sup_ratio},
                  {"argsup", a.modes.argsup},
                  {"rho_implied", a.modes.rho_implied},
                  {"rho_claimed", a.modes.rho_claimed},
                  {"rows", a.modes.table.to_json()}};
    j["half_wave_sup_ratio"] = half_wave_mode_ratio(params, 2);
    j["tangent_dim"] = tangent_dim(d);
    j["verdict"] = std::string(to_string(rep.verdict));
    j["flags"] = rep.flags;
    return a;
}

}  // namespace sharpfr::wave
