#pragma once

namespace sharpfr::penrose {

struct MinkowskiRadialPoint {
    double t = 0.0;
    double r = 0.0;
};

/// Point of the compactified radial plane; the image of the map is |T| + R < pi, R >= 0.
struct CompactifiedPoint {
    double T = 0.0;
    double R = 0.0;
};

/// T = atan(t+r) + atan(t-r), R = atan(t+r) - atan(t-r).
CompactifiedPoint penrose_forward(MinkowskiRadialPoint pt);

/// t +- r = tan((T +- R)/2). Throws DomainError outside the image triangle.
MinkowskiRadialPoint penrose_inverse(CompactifiedPoint pt);

bool in_image(CompactifiedPoint pt);

/// cos T + cos R
double omega(CompactifiedPoint pt);

/// 1 + cos R
double omega0(double R);

/// |omega0(R(0, r)) - 2/(1 + r^2)|
double omega0_identity_residual(double r);

/// Max-entry deviation of J^T diag(1,-1) J from omega^2 diag(1,-1), where J is the central
/// difference Jacobian of (t, r) -> (T, R) with step h.
double conformal_fd_residual(MinkowskiRadialPoint pt, double h);

/// (1 + r^2)^{-nu_d}, nu_d = (d-1)/2.
double f_star_profile(int d, double r);

/// |(1 + r^2)^{-nu_d} - 2^{-nu_d} omega0(R(0, r))^{nu_d}|
double profile_residual(int d, double r);

}  // namespace sharpfr::penrose
