#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "sharpfr/errors.hpp"
#include "sharpfr/quadrature.hpp"
#include "sharpfr/specfun.hpp"

using namespace sharpfr;
using namespace sharpfr::quad;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("integrate_adaptive on polynomial and trigonometric integrands") {
    const auto a = integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0, 1e-12);
    CHECK(std::abs(a.value - 1.0 / 3.0) <= 1e-12);
    CHECK(a.err_bound >= 0.0);
    CHECK(a.panels_used >= 1);

    const auto b = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, kPi, 1e-12);
    CHECK(std::abs(b.value - 2.0) <= 1e-12);

    AdaptiveOptions opts;
    opts.max_panel_width = kPi / 2;
    const auto c = integrate_adaptive([](double x) { return std::cos(x) * std::cos(x); }, 0.0, 40 * kPi, 1e-10, opts);
    CHECK(std::abs(c.value - 20 * kPi) <= 1e-10);
}

TEST_CASE("integrate_adaptive reports failure when the budget is exhausted") {
    AdaptiveOptions opts;
    opts.max_evaluations = 200;
    CHECK_THROWS_AS(integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-14, opts),
                    ConvergenceError);
}

TEST_CASE("err_bound honesty on a battery with known antiderivatives") {
    struct Case {
        std::function<double(double)> f;
        double a, b, exact;
    };
    const std::vector<Case> battery{
        {[](double x) { return std::exp(x); }, 0.0, 3.0, std::exp(3.0) - 1.0},
        {[](double x) { return 1.0 / (1.0 + x * x); }, -10.0, 10.0, 2.0 * std::atan(10.0)},
        {[](double x) { return std::sqrt(x); }, 0.0, 2.0, 2.0 / 3.0 * std::pow(2.0, 1.5)},
        {[](double x) { return std::log(x); }, 1e-8, 1.0, -1.0 - (1e-8 * std::log(1e-8) - 1e-8)},
        {[](double x) { return std::sin(50 * x); }, 0.0, 1.0, (1.0 - std::cos(50.0)) / 50.0},
        {[](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, 0.045 + 0.245},
        {[](double x) { return x * std::exp(-x); }, 0.0, 30.0, 1.0 - 31.0 * std::exp(-30.0)},
        {[](double x) { return std::cos(x) * std::exp(-0.1 * x); }, 0.0, 100.0,
         (0.1 - std::exp(-10.0) * (0.1 * std::cos(100.0) - std::sin(100.0))) / 1.01},
    };
    for (double tol : {1e-6, 1e-9, 1e-12}) {
        for (const auto& c : battery) {
            const auto r = integrate_adaptive(c.f, c.a, c.b, tol);
            CHECK(std::abs(r.value - c.exact) <= r.err_bound);
        }
    }
}

TEST_CASE("splitting invariance") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.1, 4.9);
    auto f = [](double x) { return std::sin(3 * x) * std::exp(-x) + x * x; };
    const auto whole = integrate_adaptive(f, 0.0, 5.0, 1e-11);
    for (int i = 0; i < 20; ++i) {
        const double m = u(rng);
        const auto l = integrate_adaptive(f, 0.0, m, 1e-11);
        const auto r = integrate_adaptive(f, m, 5.0, 1e-11);
        CHECK(std::abs(l.value + r.value - whole.value) <= l.err_bound + r.err_bound + whole.err_bound);
    }
}

TEST_CASE("agreement with Boost Gauss-Kronrod") {
    auto f = [](double x) { return std::log1p(x) * std::cos(x); };
    const double oracle = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, 7.0, 15, 1e-14);
    CHECK(integrate_adaptive(f, 0.0, 7.0, 1e-13).value == Approx(oracle).epsilon(1e-12));
}

TEST_CASE("tail_power_bound") {
    CHECK(tail_power_bound(1.0, 2.0, 2000.0) == Approx(5e-4));
    CHECK(tail_power_bound(0.0, 3.0, 7.0) == 0.0);
    CHECK(tail_power_bound(2.0, 3.0, 10.0) == Approx(0.01));
}

TEST_CASE("integrate_mu") {
    const auto one = integrate_mu([](double) { return 1.0; }, 0.7, 1e-12);
    CHECK(one.value == Approx(1.0).epsilon(1e-12));
    for (double nu : {0.0, 0.5, 3.0}) {
        const auto l1 = integrate_mu(
            [nu](double r) {
                const double v = specfun::laguerre(1, nu, r);
                return v * v;
            },
            nu, 1e-12, {(nu + 2.0) * (nu + 2.0), 2.0});
        CHECK(std::abs(l1.value - (nu + 1.0)) <= std::max(l1.err_bound, 1e-11));
    }
    const auto mean = integrate_mu([](double r) { return r; }, 0.0, 1e-12, {1.0, 1.0});
    CHECK(std::abs(mean.value - 1.0) <= std::max(mean.err_bound, 1e-11));
    // higher moment: E r^4 = (nu+1)(nu+2)(nu+3)(nu+4)
    const auto m4 = integrate_mu([](double r) { return std::pow(r, 4); }, 1.5, 1e-9, {1.0, 4.0});
    CHECK(m4.value == Approx(2.5 * 3.5 * 4.5 * 5.5).epsilon(1e-10));
}

TEST_CASE("gauss rules integrate their weights") {
    const auto& gj = gauss_jacobi(20, 1.5, 0.5);
    double s = 0.0;
    for (double w : gj.weights) s += w;
    // int (1-x)^a (1+x)^b dx = 2^{a+b+1} B(a+1, b+1)
    const double mass = std::pow(2.0, 3.0) * boost::math::beta(2.5, 1.5);
    CHECK(s == Approx(mass).epsilon(1e-13));
    double moment = 0.0;
    for (std::size_t i = 0; i < gj.nodes.size(); ++i) moment += gj.weights[i] * std::pow(gj.nodes[i], 6);
    const auto ref = integrate_adaptive(
        [](double x) { return std::pow(1 - x, 1.5) * std::sqrt(1 + x) * std::pow(x, 6); }, -1.0, 1.0, 1e-13);
    CHECK(moment == Approx(ref.value).epsilon(1e-9));

    const auto& gl = gauss_laguerre(30, 0.5);
    double m2 = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) m2 += gl.weights[i] * gl.nodes[i] * gl.nodes[i];
    CHECK(m2 == Approx(1.5 * 2.5).epsilon(1e-12));
}

TEST_CASE("integrate_algebraic_endpoints handles cusps") {
    // int_0^1 x^{2.5} (1-x)^{1.3} dx = B(3.5, 2.3)
    const auto r = integrate_algebraic_endpoints(
        [](double x) { return std::pow(x, 2.5) * std::pow(1 - x, 1.3); }, 0.0, 1.0, 2.5, 1.3, 1e-13);
    CHECK(std::abs(r.value - boost::math::beta(3.5, 2.3)) <= std::max(r.err_bound, 1e-15));
    // |sin x|^{0.7} over one arch, cusps at both ends
    const auto s = integrate_algebraic_endpoints([](double x) { return std::pow(std::abs(std::sin(x)), 0.7); },
                                                 0.0, kPi, 0.7, 0.7, 1e-12);
    const double exact = std::sqrt(kPi) * std::tgamma(0.85) / std::tgamma(1.35);
    CHECK(std::abs(s.value - exact) <= std::max(s.err_bound, 1e-13));
}
