#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/jacobi.hpp>

#include "sharpfr/errors.hpp"
#include "sharpfr/schrod_cert.hpp"
#include "sharpfr/specfun.hpp"

using namespace sharpfr;
using namespace sharpfr::schrod;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

// Observed order of |u_t - i Lap u| under h -> h/2, central differences in t and r.
template <class U>
double pde_order(U u, int d, double t, double r, double h) {
    auto residual = [&](double hh) {
        const std::complex<double> ut = (u(t + hh, r) - u(t - hh, r)) / (2.0 * hh);
        const std::complex<double> urr = (u(t, r + hh) - 2.0 * u(t, r) + u(t, r - hh)) / (hh * hh);
        const std::complex<double> ur = (u(t, r + hh) - u(t, r - hh)) / (2.0 * hh);
        return std::abs(ut - std::complex<double>(0.0, 1.0) * (urr + (d - 1.0) / r * ur));
    };
    return std::log2(residual(h) / residual(h / 2));
}

}  // namespace

TEST_CASE("Strichartz constants") {
    CHECK(strichartz_constant(2).value == Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(strichartz_constant(1).value == Approx(std::pow(12.0, -1.0 / 12.0)).epsilon(1e-15));
    for (int d = 1; d <= 40; ++d) {
        const double a = strichartz_constant(d).value;
        CHECK(a > 0.0);
        CHECK(a < 1.0);
    }
}

TEST_CASE("cm_sum special values") {
    for (int d = 1; d <= 64; ++d) {
        const auto sp = SchrodParams::make(d);
        CHECK(cm_sum(sp, 0) == Approx(sp.p / 2).epsilon(1e-15));
        CHECK(std::abs(cm_sum(sp, 1) - 1.0) <= 1e-12);
    }
    CHECK(cm_sum(SchrodParams::make(2), 2) == Approx(0.75).epsilon(1e-15));
}

TEST_CASE("cm_sum against an exact binomial oracle") {
    // direct summation with Boost binomials is safe for moderate m
    for (int d : {2, 4, 6}) {
        const auto sp = SchrodParams::make(d);
        for (int m = 0; m <= 30; m += 5) {
            double s = 0.0;
            const int nu = d / 2 - 1;
            for (int j = 0; j <= m; ++j) {
                s += boost::math::binomial_coefficient<double>(m + nu, m - j) *
                     boost::math::binomial_coefficient<double>(m, j) * std::pow(1.0 - 2.0 / sp.p, 2 * m - 2 * j) *
                     std::pow(2.0 / sp.p, 2 * j);
            }
            CHECK(cm_sum(sp, m) == Approx(0.5 * sp.p * s).epsilon(1e-12));
        }
    }
}

TEST_CASE("p = 4 closed form") {
    CHECK(cm_closed_p4(1) == Approx(1.0));
    CHECK(cm_closed_p4(2) == Approx(0.75));
    CHECK(cm_closed_p4(3) == Approx(0.625));
    const auto sp = SchrodParams::make(2);
    for (int m = 0; m <= 100; ++m) CHECK(std::abs(cm_sum(sp, m) - cm_closed_p4(m)) <= 1e-12);
}

TEST_CASE("Jacobi form agrees with the sum") {
    CHECK(cm_jacobi(SchrodParams::make(1), 3) == Approx(cm_sum(SchrodParams::make(1), 3)).epsilon(1e-13));
    CHECK(cm_jacobi(SchrodParams::make(4), 5) == Approx(cm_sum(SchrodParams::make(4), 5)).epsilon(1e-13));
    CHECK(cm_jacobi(SchrodParams::make(3), 0) == Approx(SchrodParams::make(3).p / 2));
    CHECK_THROWS_AS(cm_jacobi(SchrodParams::make(2), 3), DomainError);
    // Boost Jacobi as an independent evaluation of (p/2) Z^-m P_m(X)
    const auto sp = SchrodParams::make(3);
    for (int m : {2, 7, 15}) {
        const double oracle = 0.5 * sp.p * boost::math::jacobi(static_cast<unsigned>(m), sp.nu, 0.0, sp.x) /
                              std::pow(sp.z, m);
        CHECK(cm_jacobi(sp, m) == Approx(oracle).epsilon(1e-11));
    }
}

TEST_CASE("three evaluations of c_m agree") {
    for (int d : {1, 3, 4, 5}) {
        const auto sp = SchrodParams::make(d);
        for (int m = 0; m <= 10; ++m) {
            const double s = cm_sum(sp, m);
            CHECK(std::abs(s - cm_jacobi(sp, m)) <= 1e-8);
            const auto q = cm_quad(sp, m);
            CHECK(std::abs(s - q.value) <= std::max(q.err_bound, 1e-8));
        }
    }
}

TEST_CASE("c_m strictly below one and decreasing") {
    for (int d = 1; d <= 20; ++d) {
        const auto sp = SchrodParams::make(d);
        double prev = cm_sum(sp, 1);
        for (int m = 2; m <= 500; ++m) {
            const double c = cm_sum(sp, m);
            CHECK(c > 0.0);
            CHECK(c < 1.0);
            CHECK(c < prev);
            prev = c;
        }
    }
}

TEST_CASE("cm certificates") {
    const auto c2 = cm_certificate(2, 500);
    CHECK(c2.report.verdict == Verdict::Pass);
    CHECK(c2.min_gap == Approx(0.25).epsilon(1e-12));
    CHECK(cm_certificate(1, 500).report.verdict == Verdict::Pass);
    CHECK(cm_certificate(20, 500).report.verdict == Verdict::Pass);
}

TEST_CASE("Laguerre scaling identity") {
    CHECK(laguerre_scaling_check(6, 0.5, 1.0, 2.0) <= 1e-13);
    CHECK(laguerre_scaling_check(6, 0.5, 0.0, 2.0) <= 1e-13);
    CHECK(laguerre_scaling_check(5, 0.5, 0.4, 3.0) <= 1e-10);
    CHECK(laguerre_scaling_check(12, 2.0, 0.7, 5.5) <= 1e-10);
}

TEST_CASE("Schrodinger evolution of modes") {
    CHECK(std::abs(schrod_evolve_laguerre(3, 2, 0.0, 0.4) - laguerre_mode(3, 2, 0.4)) <= 1e-14);
    CHECK(std::abs(schrod_evolve_hermite(2, {1, 2}, 0.0, {0.3, -0.2}) - hermite_mode({1, 2}, {0.3, -0.2})) <= 1e-14);

    // closed form of the evolved Gaussian in d = 1
    for (double t : {0.05, 0.3, -0.7}) {
        for (double x : {0.0, 0.4, 1.1}) {
            const std::complex<double> i(0.0, 1.0);
            const std::complex<double> expected =
                std::pow(1.0 + 4.0 * kPi * i * t, -0.5) *
                std::exp(-kPi * x * x * (1.0 - 4.0 * kPi * i * t) / (1.0 + 16.0 * kPi * kPi * t * t));
            CHECK(std::abs(schrod_evolve_laguerre(1, 0, t, x) - expected) <= 1e-13);
            CHECK(std::abs(schrod_evolve_hermite(1, {0}, t, {x}) - expected) <= 1e-13);
        }
    }
}

TEST_CASE("evolved modes solve the Schrodinger equation") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> ut(-0.3, 0.3), ur(0.2, 1.5);
    int passed = 0;
    for (int i = 0; i < 20; ++i) {
        const double t = ut(rng), r = ur(rng);
        const int d = 1 + i % 4, m = 1 + i % 3;
        const double o = pde_order([&](double tt, double rr) { return schrod_evolve_laguerre(d, m, tt, rr); }, d, t,
                                   r, 1e-3);
        if (o >= 1.8) ++passed;
        // Hermite family in d = 1: radial Laplacian with d = 1 is the plain second derivative
        const double oh = pde_order(
            [&](double tt, double xx) { return schrod_evolve_hermite(1, {2}, tt, {xx}); }, 1, t, r, 1e-3);
        CHECK(oh >= 1.8);
    }
    CHECK(passed == 20);
}

TEST_CASE("Lens model Hessian reproduces the mode coefficients") {
    const auto lens = lens_model_check(1, 5, 48, 64);
    CHECK(lens.report.verdict == Verdict::Pass);
    CHECK(lens.gradient_norm <= 1e-6 * lens.model_scale);
    REQUIRE(lens.diagonal_ratio.size() == 8);
    for (double r : lens.diagonal_ratio) CHECK(std::abs(r - 1.0) <= 1e-3);
    CHECK_THROWS_AS(lens_model_check(1, 5, 4, 64), DomainError);
}
