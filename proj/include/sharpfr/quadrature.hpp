#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "sharpfr/certified.hpp"

namespace sharpfr::quad {

using Integrand = std::function<double(double)>;

struct QuadResult {
    double value = 0.0;
    double err_bound = 0.0;
    int panels_used = 0;
};

struct AdaptiveOptions {
    /// Initial panels are no wider than this (pi/2 for oscillatory Bessel integrands).
    double max_panel_width = std::numeric_limits<double>::infinity();
    std::int64_t max_evaluations = 2'000'000;
};

/// Adaptive 15-point Gauss-Kronrod quadrature. The worst panel is bisected until the summed
/// |K - G| estimates drop below `tol`. Throws ConvergenceError when the evaluation budget runs out.
QuadResult integrate_adaptive(const Integrand& f, double a, double b, double tol,
                              const AdaptiveOptions& opts = {});

/// Integral of C r^-s over [R, inf).
double tail_power_bound(double c, double s, double r);

/// Declared growth |f(r)| <= coeff * (1 + r)^degree, used to size the truncation of integrate_mu.
struct PolyGrowth {
    double coeff = 1.0;
    double degree = 0.0;
};

/// Integral of f against d mu(r) = r^nu e^-r dr / Gamma(nu + 1) on [0, inf).
CertifiedValue integrate_mu(const Integrand& f, double nu, double tol, PolyGrowth growth = {});

/// Nodes and weights of an n-point Gauss rule.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Jacobi rule for the weight (1 - x)^a (1 + x)^b on [-1, 1]. Rules are cached.
const GaussRule& gauss_jacobi(int n, double a, double b);

/// Generalized Gauss-Laguerre rule for the probability weight r^nu e^-r / Gamma(nu + 1).
const GaussRule& gauss_laguerre(int n, double nu);

/// Integral over [lo, hi] of an integrand that behaves like |r - lo|^alpha_lo near lo and
/// |hi - r|^alpha_hi near hi, times a function smooth on the closed interval.
///
/// Uses Gauss-Jacobi rules on f divided by the algebraic weight; pieces whose 20/40-point
/// estimates disagree by more than their share of `tol` are bisected.
QuadResult integrate_algebraic_endpoints(const Integrand& f, double lo, double hi,
                                         double alpha_lo, double alpha_hi, double tol);

}  // namespace sharpfr::quad
