#include "sharpfr/penrose_geom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sharpfr/errors.hpp"

namespace sharpfr::penrose {

CompactifiedPoint penrose_forward(MinkowskiRadialPoint pt) {
    const double a = std::atan(pt.t + pt.r);
    const double b = std::atan(pt.t - pt.r);
    return {a + b, a - b};
}

bool in_image(CompactifiedPoint pt) {
    return pt.R >= 0.0 && std::abs(pt.T) + pt.R < std::numbers::pi;
}

MinkowskiRadialPoint penrose_inverse(CompactifiedPoint pt) {
    if (!in_image(pt)) throw DomainError("penrose_inverse: point outside |T| + R < pi, R >= 0");
    const double u = std::tan(0.5 * (pt.T + pt.R));
    const double v = std::tan(0.5 * (pt.T - pt.R));
    return {0.5 * (u + v), std::max(0.0, 0.5 * (u - v))};
}

double omega(CompactifiedPoint pt) { return std::cos(pt.T) + std::cos(pt.R); }

double omega0(double R) { return 1.0 + std::cos(R); }

double omega0_identity_residual(double r) {
    return std::abs(omega0(penrose_forward({0.0, r}).R) - 2.0 / (1.0 + r * r));
}

double conformal_fd_residual(MinkowskiRadialPoint pt, double h) {
    if (!(h > 0.0)) throw DomainError("conformal_fd_residual: step must be positive");
    const auto dt_p = penrose_forward({pt.t + h, pt.r});
    const auto dt_m = penrose_forward({pt.t - h, pt.r});
    const auto dr_p = penrose_forward({pt.t, pt.r + h});
    const auto dr_m = penrose_forward({pt.t, pt.r - h});
    // J = [[dT/dt, dT/dr], [dR/dt, dR/dr]]
    const double j00 = (dt_p.T - dt_m.T) / (2.0 * h);
    const double j10 = (dt_p.R - dt_m.R) / (2.0 * h);
    const double j01 = (dr_p.T - dr_m.T) / (2.0 * h);
    const double j11 = (dr_p.R - dr_m.R) / (2.0 * h);
    const double w = omega(penrose_forward(pt));
    const double w2 = w * w;
    const double g00 = j00 * j00 - j10 * j10;
    const double g01 = j00 * j01 - j10 * j11;
    const double g11 = j01 * j01 - j11 * j11;
    return std::max({std::abs(g00 - w2), std::abs(g01), std::abs(g11 + w2)});
}

double f_star_profile(int d, double r) {
    if (d < 2) throw DomainError("f_star_profile: d must be at least 2");
    return std::pow(1.0 + r * r, -0.5 * (d - 1));
}

double profile_residual(int d, double r) {
    const double nu = 0.5 * (d - 1);
    const double lifted = std::pow(0.5 * omega0(penrose_forward({0.0, r}).R), nu);
    return std::abs(f_star_profile(d, r) - lifted);
}

}  // namespace sharpfr::penrose
