#include "sharpfr/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sharpfr/errors.hpp"

namespace sharpfr::specfun {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool ok, const std::string& msg) {
    if (!ok) throw DomainError(msg);
}

void check_degree(int n, int limit, const char* name) {
    require(n >= 0 && n <= limit, std::string(name) + ": degree out of range: " + std::to_string(n));
}

// Exact C(n, k) for small arguments; 0 when k > n.
std::int64_t binom_int(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    __extension__ using Wide = __int128;
    Wide c = 1;
    for (std::int64_t i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
    return static_cast<std::int64_t>(c);
}

}  // namespace

double ln_gamma(double x) {
    require(x > 0.0 && std::isfinite(x), "ln_gamma: argument must be positive, got " + std::to_string(x));
    return std::lgamma(x);
}

double ln_binom(double n, double k) {
    require(k > -1.0 && n - k > -1.0, "ln_binom: arguments outside Gamma domain");
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double laguerre(int m, double nu, double x) {
    check_degree(m, 10000, "laguerre");
    require(nu > -1.0, "laguerre: parameter must exceed -1");
    double prev = 1.0;
    if (m == 0) return prev;
    double cur = 1.0 + nu - x;
    for (int k = 1; k < m; ++k) {
        const double next = ((2.0 * k + 1.0 + nu - x) * cur - (k + nu) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double laguerre_at_zero(int m, double nu) {
    check_degree(m, 10000, "laguerre_at_zero");
    require(nu > -1.0, "laguerre_at_zero: parameter must exceed -1");
    if (m == 0) return 1.0;
    return std::exp(ln_binom(nu + m, m));
}

double hermite_monic(int n, double x) {
    check_degree(n, 1000, "hermite_monic");
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = x;
    for (int k = 1; k < n; ++k) {
        const double next = x * cur - k * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double gegenbauer(int k, double nu, double x) {
    check_degree(k, 1000, "gegenbauer");
    require(nu > -0.5, "gegenbauer: parameter must exceed -1/2");
    double prev = 1.0;
    if (k == 0) return prev;
    double cur = 2.0 * nu * x;
    for (int n = 1; n < k; ++n) {
        const double next = (2.0 * (n + nu) * x * cur - (n + 2.0 * nu - 1.0) * prev) / (n + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double gegenbauer_ratio(int k, double nu, double x) {
    check_degree(k, 1000, "gegenbauer_ratio");
    require(nu > -0.5, "gegenbauer_ratio: parameter must exceed -1/2");
    if (k == 0) return 1.0;
    if (nu == 0.0) {
        double prev = 1.0, cur = x;
        for (int n = 1; n < k; ++n) {
            const double next = 2.0 * x * cur - prev;
            prev = cur;
            cur = next;
        }
        return cur;
    }
    // C_k^nu(1) = C(k + 2nu - 1, k)
    return gegenbauer(k, nu, x) / std::exp(ln_binom(k + 2.0 * nu - 1.0, k));
}

double jacobi_p(int m, double a, double b, double x) {
    return jacobi_p_scaled(m, a, b, x, 1.0);
}

double jacobi_p_scaled(int m, double a, double b, double x, double z) {
    check_degree(m, 1000, "jacobi_p");
    require(a > -1.0 && b > -1.0, "jacobi_p: parameters must exceed -1");
    require(z != 0.0 && std::isfinite(z), "jacobi_p_scaled: scale must be finite and nonzero");
    double prev = 1.0;
    if (m == 0) return prev;
    double cur = ((a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0)) / z;
    const double z2 = z * z;
    for (int n = 2; n <= m; ++n) {
        const double s = 2.0 * n + a + b;
        const double c0 = 2.0 * n * (n + a + b) * (s - 2.0);
        const double c1 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
        const double c2 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * s;
        const double next = (c1 * cur / z - c2 * prev / z2) / c0;
        prev = cur;
        cur = next;
    }
    return cur;
}

double binom_real(double alpha, int h) {
    require(h >= 0, "binom_real: h must be nonnegative");
    if (alpha >= 0.0 && alpha == std::floor(alpha) && alpha < h) return 0.0;
    double c = 1.0;
    for (int j = 0; j < h; ++j) c *= (alpha - j) / (j + 1.0);
    return c;
}

std::int64_t sph_harm_count(int d, int ell) {
    require(d >= 1 && ell >= 0, "sph_harm_count: need d >= 1 and ell >= 0");
    if (ell == 0) return 1;
    return binom_int(ell + d, d) - binom_int(ell - 2 + d, d);
}

double sigma_hat(int d, double r) {
    require(d >= 2, "sigma_hat: need d >= 2");
    return std::pow(2.0 * kPi, 0.5 * d) * bessel_a(0.5 * d - 1.0, r);
}

double sphere_area(int n) {
    require(n >= 1, "sphere_area: need n >= 1");
    const double s = 0.5 * (n + 1);
    return 2.0 * std::exp(s * std::log(kPi) - std::lgamma(s));
}

void PolyFamily::validate() const {
    switch (family) {
        case Family::Laguerre:
            check_degree(degree, 10000, "laguerre");
            require(a > -1.0, "laguerre: parameter must exceed -1");
            break;
        case Family::HermiteMonic:
            check_degree(degree, 1000, "hermite_monic");
            break;
        case Family::Gegenbauer:
            check_degree(degree, 1000, "gegenbauer");
            require(a > -0.5, "gegenbauer: parameter must exceed -1/2");
            break;
        case Family::Jacobi:
            check_degree(degree, 1000, "jacobi_p");
            require(a > -1.0 && b > -1.0, "jacobi_p: parameters must exceed -1");
            break;
    }
}

double PolyFamily::operator()(double x) const {
    switch (family) {
        case Family::Laguerre: return laguerre(degree, a, x);
        case Family::HermiteMonic: return hermite_monic(degree, x);
        case Family::Gegenbauer: return gegenbauer(degree, a, x);
        case Family::Jacobi: return jacobi_p(degree, a, b, x);
    }
    return 0.0;
}

}  // namespace sharpfr::specfun
