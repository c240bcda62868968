// Bessel functions J_nu and A_nu = J_nu / x^nu for integer and half-integer nu.
//
// Evaluation regimes (x > 0):
//   x <= 2                      power series of A_nu
//   integer nu, x > 25, nu < x  Hankel asymptotics for J_0, J_1, then upward recurrence
//   half-integer nu, nu < x     closed forms for J_{-1/2}, J_{1/2}, then upward recurrence
//   otherwise                   Miller's downward recurrence, normalized by the
//                               Neumann sum (integer) or the closed form (half-integer)

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "sharpfr/errors.hpp"
#include "sharpfr/specfun.hpp"

namespace sharpfr::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRescale = 1e250;
constexpr double kSeriesLimit = 2.0;
constexpr double kHankelLimit = 25.0;

bool is_half_or_whole(double order) {
    const double twice = 2.0 * order;
    return std::isfinite(order) && twice == std::round(twice);
}

void check_order_and_arg(double order, double x, double max_order, double max_x) {
    if (!is_half_or_whole(order) || order < 0.0 || order > max_order) {
        throw DomainError("Bessel order must be an integer or half-integer in [0, " +
                          std::to_string(max_order) + "], got " + std::to_string(order));
    }
    if (!(x >= 0.0) || x > max_x) {
        throw DomainError("Bessel argument outside [0, " + std::to_string(max_x) +
                          "]: " + std::to_string(x));
    }
}

double series_a(double nu, double x) {
    const double q = 0.25 * x * x;
    double term = std::exp(-nu * std::numbers::ln2 - std::lgamma(nu + 1.0));
    double sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= -q / (k * (nu + k));
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

// Asymptotic J_mu(x) for mu in {0, 1} and large x.
double hankel_j(double mu, double x) {
    const double m4 = 4.0 * mu * mu;
    double p = 1.0, q = 0.0;
    double a = 1.0;
    double prev = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double f = m4 - (2.0 * k - 1.0) * (2.0 * k - 1.0);
        a *= f / (8.0 * k * x);
        if (std::abs(a) > std::abs(prev) || a == 0.0) break;
        switch (k % 4) {
            case 1: q += a; break;
            case 2: p -= a; break;
            case 3: q -= a; break;
            default: p += a; break;
        }
        if (std::abs(a) < 1e-18) break;
        prev = a;
    }
    const double phase = (0.5 * mu + 0.25) * kPi;
    const double s = std::sin(x), c = std::cos(x);
    const double cp = std::cos(phase), sp = std::sin(phase);
    const double cos_chi = c * cp + s * sp;
    const double sin_chi = s * cp - c * sp;
    return std::sqrt(2.0 / (kPi * x)) * (p * cos_chi - q * sin_chi);
}

int miller_start(double order, double x) {
    const double top = std::max(order, std::ceil(x));
    return static_cast<int>(top + 20.0 + std::sqrt(40.0 * (top + 1.0)));
}

double miller_integer(int n, double x) {
    int start = miller_start(n, x);
    if (start % 2 != 0) ++start;
    double jp = 0.0, j = 1.0;
    double sum = 0.0, result = 0.0;
    for (int k = start; k >= 1; --k) {
        const double jm = (2.0 * k / x) * j - jp;
        jp = j;
        j = jm;
        const int idx = k - 1;
        if (idx == n) result = j;
        if (idx > 0 && idx % 2 == 0) sum += 2.0 * j;
        if (std::abs(j) > kRescale) {
            j /= kRescale;
            jp /= kRescale;
            sum /= kRescale;
            result /= kRescale;
        }
    }
    sum += j;
    return result / sum;
}

// Order m + 1/2 by downward recurrence from a high order down to -1/2.
double miller_half(int m, double x) {
    const int start = miller_start(m + 0.5, x);
    double jp = 0.0, j = 1.0;  // J_{start+3/2}, J_{start+1/2}
    double result = 0.0;
    for (int i = start; i >= 0; --i) {
        const double mu = i + 0.5;
        const double jm = (2.0 * mu / x) * j - jp;  // J_{mu-1}
        jp = j;
        j = jm;
        if (i - 1 == m) result = j;
        if (std::abs(j) > kRescale) {
            j /= kRescale;
            jp /= kRescale;
            result /= kRescale;
        }
    }
    if (start == m) result = jp;
    // j = J_{-1/2}, jp = J_{1/2} (unnormalized)
    const double amp = std::sqrt(2.0 / (kPi * x));
    const double exact_s = amp * std::sin(x);
    const double exact_c = amp * std::cos(x);
    const double scale = std::abs(exact_s) > std::abs(exact_c) ? exact_s / jp : exact_c / j;
    return result * scale;
}

double upward_half(int m, double x) {
    const double amp = std::sqrt(2.0 / (kPi * x));
    double jm = amp * std::cos(x);  // J_{-1/2}
    double j = amp * std::sin(x);   // J_{1/2}
    for (int i = 0; i < m; ++i) {
        const double mu = i + 0.5;
        const double jn = (2.0 * mu / x) * j - jm;
        jm = j;
        j = jn;
    }
    return j;
}

double upward_integer(int n, double x) {
    double jm = hankel_j(0.0, x);
    if (n == 0) return jm;
    double j = hankel_j(1.0, x);
    for (int k = 1; k < n; ++k) {
        const double jn = (2.0 * k / x) * j - jm;
        jm = j;
        j = jn;
    }
    return j;
}

double j_unchecked(double order, double x) {
    if (x == 0.0) return order == 0.0 ? 1.0 : 0.0;
    if (x <= kSeriesLimit) return series_a(order, x) * std::pow(x, order);
    const long twice = std::lround(2.0 * order);
    if (twice % 2 == 0) {
        const int n = static_cast<int>(twice / 2);
        if (x > kHankelLimit && n < x) return upward_integer(n, x);
        return miller_integer(n, x);
    }
    const int m = static_cast<int>((twice - 1) / 2);
    if (order < x) return upward_half(m, x);
    return miller_half(m, x);
}

double a_unchecked(double order, double x) {
    if (x <= kSeriesLimit) return series_a(order, x);
    return j_unchecked(order, x) * std::exp(-order * std::log(x));
}

}  // namespace

namespace detail {

double bessel_j(double order, double x) {
    check_order_and_arg(order, x, 160.0, 1e5);
    return j_unchecked(order, x);
}

double bessel_a(double order, double x) {
    check_order_and_arg(order, x, 160.0, 1e5);
    return a_unchecked(order, x);
}

}  // namespace detail

double bessel_j(double order, double x) {
    check_order_and_arg(order, x, 64.0, 1e4);
    return j_unchecked(order, x);
}

double bessel_a(double order, double x) {
    check_order_and_arg(order, x, 64.0, 1e4);
    return a_unchecked(order, x);
}

std::vector<double> bessel_zeros(double order, double upto) {
    check_order_and_arg(order, std::min(upto, 1e5), 160.0, 1e5);
    std::vector<double> zeros;
    constexpr double kStep = 0.25;
    // j_{nu,1} > nu, and consecutive zeros are more than 2 apart for nu >= 0.
    double lo = std::max(order, kStep);
    double flo = j_unchecked(order, lo);
    auto f = [order](double x) { return j_unchecked(order, x); };
    boost::math::tools::eps_tolerance<double> tol(52);
    while (lo < upto) {
        const double hi = std::min(lo + kStep, upto);
        const double fhi = j_unchecked(order, hi);
        if (flo == 0.0) {
            zeros.push_back(lo);
        } else if (fhi != 0.0 && (flo < 0.0) != (fhi < 0.0)) {
            std::uintmax_t iters = 100;
            auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
            const double root = 0.5 * (a + b);
            if (root < upto) zeros.push_back(root);
        }
        lo = hi;
        flo = fhi;
    }
    return zeros;
}

}  // namespace sharpfr::specfun
