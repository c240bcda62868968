#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/gegenbauer.hpp>
#include <boost/math/special_functions/jacobi.hpp>
#include <boost/math/special_functions/laguerre.hpp>

#include "sharpfr/errors.hpp"
#include "sharpfr/quadrature.hpp"
#include "sharpfr/specfun.hpp"

using namespace sharpfr;
using namespace sharpfr::specfun;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("ln_gamma values") {
    CHECK(ln_gamma(1.0) == Approx(0.0));
    CHECK(ln_gamma(5.0) == Approx(std::log(24.0)).epsilon(1e-15));
    CHECK(ln_gamma(0.5) == Approx(0.5 * std::log(kPi)).epsilon(1e-15));
    CHECK_THROWS_AS(ln_gamma(0.0), DomainError);
    CHECK_THROWS_AS(ln_gamma(-1.5), DomainError);
}

TEST_CASE("ln_binom matches Boost binomial logs") {
    for (int n = 0; n <= 60; n += 7) {
        for (int k = 0; k <= n; k += 3) {
            const double expected = std::log(boost::math::tgamma(n + 1.0)) -
                                    std::log(boost::math::tgamma(k + 1.0)) -
                                    std::log(boost::math::tgamma(n - k + 1.0));
            CHECK(ln_binom(n, k) == Approx(expected).epsilon(1e-12).scale(1.0));
        }
    }
}

TEST_CASE("bessel_j small values") {
    CHECK(bessel_j(0.0, 0.0) == 1.0);
    CHECK(bessel_j(1.0, 0.0) == 0.0);
    CHECK(bessel_j(0.5, kPi / 2) == Approx(2.0 / kPi).epsilon(1e-14));
    CHECK_THROWS_AS(bessel_j(0.3, 1.0), DomainError);
    CHECK_THROWS_AS(bessel_j(65.0, 1.0), DomainError);
    CHECK_THROWS_AS(bessel_j(1.0, -1.0), DomainError);
}

TEST_CASE("bessel_a values") {
    CHECK(bessel_a(0.0, 0.0) == 1.0);
    CHECK(std::abs(bessel_a(0.5, kPi)) < 1e-15);
    CHECK(bessel_a(1.0, 0.0) == Approx(0.5));
    CHECK(bessel_a(1.0, 1e-3) == Approx(bessel_j(1.0, 1e-3) / 1e-3).epsilon(1e-13));
}

TEST_CASE("bessel_j agrees with Boost on the supported envelope") {
    double worst = 0.0;
    for (int twice = 0; twice <= 128; twice += 3) {
        const double order = 0.5 * twice;
        for (double x : {0.01, 0.7, 3.0, 12.5, 31.0, 64.0, 99.9, 250.0, 1234.5, 9999.0}) {
            worst = std::max(worst, std::abs(bessel_j(order, x) - boost::math::cyl_bessel_j(order, x)));
        }
    }
    CHECK(worst < 1e-13);
}

TEST_CASE("bessel three-term recurrence residual") {
    double worst = 0.0;
    for (int nu = 1; nu <= 40; nu += 3) {
        for (double x = nu + 1.0; x <= 2000.0; x += 37.3) {
            const double r = bessel_j(nu + 1, x) - (2.0 * nu / x) * bessel_j(nu, x) + bessel_j(nu - 1, x);
            worst = std::max(worst, std::abs(r));
        }
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("half-integer Bessel closed forms") {
    double worst = 0.0;
    for (double x = 0.05; x <= 2000.0; x += 1.37) {
        const double s = std::sin(x), c = std::cos(x), amp = std::sqrt(2.0 / (kPi * x));
        const double j12 = amp * s;
        const double j32 = amp * (s / x - c);
        const double j52 = amp * ((3.0 / (x * x) - 1.0) * s - 3.0 * c / x);
        worst = std::max({worst, std::abs(bessel_j(0.5, x) - j12), std::abs(bessel_j(1.5, x) - j32),
                          std::abs(bessel_j(2.5, x) - j52)});
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("bessel zeros are sign changes and match Boost") {
    const auto z0 = bessel_zeros(0.0, 100.0);
    // j_{0,32} ~ 99.78
    REQUIRE(z0.size() == 32);
    for (std::size_t i = 0; i < z0.size(); ++i) {
        CHECK(z0[i] == Approx(boost::math::cyl_bessel_j_zero(0.0, static_cast<int>(i) + 1)).epsilon(1e-13));
    }
    const auto z = bessel_zeros(7.5, 300.0);
    for (std::size_t i = 0; i < z.size(); ++i) {
        CHECK(z[i] == Approx(boost::math::cyl_bessel_j_zero(7.5, static_cast<int>(i) + 1)).epsilon(1e-12));
    }
}

TEST_CASE("laguerre values and oracle") {
    CHECK(laguerre(2, 0.0, 0.0) == Approx(1.0));
    CHECK(laguerre(1, 0.0, 2.0) == Approx(-1.0));
    CHECK(laguerre(2, 0.0, 2.0) == Approx(-1.0));
    for (int m : {0, 1, 5, 17, 40}) {
        for (double nu : {0.0, 0.5, 2.0, 7.0}) {
            for (double x : {0.1, 1.3, 9.0, 25.0}) {
                const double expected = boost::math::laguerre(m, static_cast<unsigned>(nu), x);
                if (nu == std::floor(nu)) {
                    CHECK(laguerre(m, nu, x) == Approx(expected).epsilon(1e-11).scale(1.0));
                }
            }
        }
    }
    CHECK_THROWS_AS(laguerre(2, -1.0, 0.5), DomainError);
    CHECK_THROWS_AS(laguerre(-1, 0.0, 0.5), DomainError);
}

TEST_CASE("laguerre at zero") {
    CHECK(laguerre_at_zero(0, 3.3) == Approx(1.0));
    CHECK(laguerre_at_zero(2, 0.0) == Approx(1.0));
    CHECK(laguerre_at_zero(3, 0.5) == Approx(2.1875).epsilon(1e-14));
    for (double nu : {0.0, 0.5, 1.0, 1.5}) {
        for (int m = 0; m <= 200; m += 11) {
            CHECK(laguerre(m, nu, 0.0) == Approx(laguerre_at_zero(m, nu)).epsilon(1e-12));
        }
    }
}

TEST_CASE("laguerre generating function") {
    for (double w : {0.1, 0.3}) {
        for (double r : {0.5, 2.0, 10.0}) {
            for (double nu : {0.0, 0.5, 1.0}) {
                const int n_max = 80;
                double s = 0.0;
                for (int n = 0; n <= n_max; ++n) s += std::pow(w, n) * laguerre(n, nu, r);
                const double expected = std::exp(-r * w / (1.0 - w)) / std::pow(1.0 - w, nu + 1.0);
                // |L_n^nu(r)| <= L_n^nu(0) e^{r/2} bounds the tail by a geometric series
                double tail = 0.0;
                for (int n = n_max + 1; n <= n_max + 400; ++n) {
                    tail += std::pow(w, n) * laguerre_at_zero(n, nu) * std::exp(0.5 * r);
                }
                CHECK(std::abs(s - expected) <= tail + 1e-13);
            }
        }
    }
}

TEST_CASE("hermite monic") {
    CHECK(hermite_monic(0, 7.0) == 1.0);
    CHECK(hermite_monic(1, 3.0) == 3.0);
    CHECK(hermite_monic(2, 2.0) == 3.0);
    CHECK(hermite_monic(4, 1.5) == Approx(std::pow(1.5, 4) - 6 * 1.5 * 1.5 + 3));
}

TEST_CASE("gegenbauer values and oracle") {
    for (double nu : {0.5, 1.0, 2.5}) {
        CHECK(gegenbauer(1, nu, 0.3) == Approx(2.0 * nu * 0.3));
    }
    CHECK(gegenbauer(2, 1.0, 1.0) == Approx(3.0));
    CHECK(std::abs(gegenbauer(3, 0.5, 0.0)) < 1e-15);
    for (int k : {0, 3, 10, 25}) {
        for (double nu : {0.5, 1.0, 3.5}) {
            for (double x : {-0.9, -0.2, 0.4, 0.99}) {
                CHECK(gegenbauer(k, nu, x) ==
                      Approx(boost::math::gegenbauer(static_cast<unsigned>(k), nu, x)).epsilon(1e-12).scale(1.0));
            }
        }
    }
}

TEST_CASE("gegenbauer ratio stays in [-1, 1]") {
    double worst = 0.0;
    for (double nu : {0.5, 1.0, 2.0, 5.0}) {
        for (int k = 0; k <= 50; ++k) {
            for (int i = 0; i <= 1000; ++i) {
                worst = std::max(worst, std::abs(gegenbauer_ratio(k, nu, -1.0 + 0.002 * i)));
            }
        }
    }
    CHECK(worst <= 1.0 + 1e-12);
    CHECK(gegenbauer_ratio(4, 0.0, 0.3) == Approx(std::cos(4 * std::acos(0.3))));
}

TEST_CASE("jacobi values and oracle") {
    CHECK(jacobi_p(0, 0.3, 1.7, 0.2) == 1.0);
    CHECK(jacobi_p(1, 0.0, 0.0, 0.5) == Approx(0.5));
    for (int m : {1, 4, 9}) {
        for (double a : {0.0, 0.5, 2.0}) {
            CHECK(jacobi_p(m, a, 0.7, 1.0) == Approx(std::exp(ln_binom(m + a, m))).epsilon(1e-13));
            CHECK(jacobi_p(m, a, 0.0, 1.0) == Approx(laguerre_at_zero(m, a)).epsilon(1e-13));
            for (double x : {-0.8, 0.1, 0.95}) {
                CHECK(jacobi_p(m, a, 0.7, x) ==
                      Approx(boost::math::jacobi(static_cast<unsigned>(m), a, 0.7, x)).epsilon(1e-12).scale(1.0));
            }
        }
    }
}

TEST_CASE("jacobi scaled recurrence") {
    for (int m : {1, 5, 30}) {
        const double x = 1.7, z = 3.0;
        CHECK(jacobi_p_scaled(m, 0.5, 0.0, x, z) == Approx(jacobi_p(m, 0.5, 0.0, x) / std::pow(z, m)).epsilon(1e-12));
    }
    CHECK(std::isfinite(jacobi_p_scaled(500, 1.0, 0.0, 3.0, 5.0)));
}

TEST_CASE("binom_real") {
    CHECK(binom_real(2.7, 0) == 1.0);
    CHECK(binom_real(1.0, 2) == 0.0);
    CHECK(binom_real(0.5, 1) == Approx(0.5));
    CHECK(binom_real(0.5, 2) == Approx(-0.125));
    CHECK(binom_real(5.0, 2) == Approx(10.0));
}

TEST_CASE("spherical harmonic counts") {
    for (int d = 1; d <= 10; ++d) CHECK(sph_harm_count(d, 0) == 1);
    CHECK(sph_harm_count(3, 1) == 4);
    for (int ell = 0; ell <= 20; ++ell) CHECK(sph_harm_count(2, ell) == 2 * ell + 1);
    CHECK(sph_harm_count(1, 5) == 2);
}

TEST_CASE("sigma_hat") {
    CHECK(sigma_hat(3, 0.0) == Approx(4.0 * kPi));
    CHECK(std::abs(sigma_hat(3, kPi)) < 1e-14);
    CHECK(sigma_hat(3, 2.3) == Approx(4.0 * kPi * std::sin(2.3) / 2.3).epsilon(1e-13));
    for (double r : {0.4, 3.0, 17.0}) CHECK(sigma_hat(2, r) == Approx(2.0 * kPi * bessel_j(0.0, r)));
}

TEST_CASE("sphere area") {
    CHECK(sphere_area(1) == Approx(2.0 * kPi));
    CHECK(sphere_area(2) == Approx(4.0 * kPi));
    CHECK(sphere_area(3) == Approx(2.0 * kPi * kPi));
}

TEST_CASE("PolyFamily dispatch and validation") {
    PolyFamily f{Family::Jacobi, 3, 0.5, 1.5};
    CHECK(f(0.2) == Approx(jacobi_p(3, 0.5, 1.5, 0.2)));
    CHECK_THROWS_AS((PolyFamily{Family::Gegenbauer, 2, -0.7, 0.0}).validate(), DomainError);
    CHECK_THROWS_AS((PolyFamily{Family::Laguerre, -1, 0.0, 0.0}).validate(), DomainError);
}

TEST_CASE("laguerre orthogonality under the Gamma weight") {
    for (double nu : {0.0, 0.5, 1.5}) {
        for (int i = 0; i <= 10; i += 2) {
            for (int j = 0; j <= 10; j += 3) {
                const auto r = quad::integrate_mu(
                    [&](double x) { return laguerre(i, nu, x) * laguerre(j, nu, x); }, nu, 1e-11,
                    {laguerre_at_zero(i, nu) * laguerre_at_zero(j, nu) * 4.0, static_cast<double>(i + j)});
                const double expected = i == j ? laguerre_at_zero(i, nu) : 0.0;
                CHECK(std::abs(r.value - expected) <= 1e-8);
            }
        }
    }
}
