#pragma once

#include <complex>
#include <vector>

#include "sharpfr/certified.hpp"

namespace sharpfr::schrod {

/// Exponents of the paraboloid setting: p = 2 + 4/d, nu = d/2 - 1, Z = (1 - 4/p)^-1,
/// X = (Z + 1/Z)/2. Z and X are NaN at d = 2 (p = 4).
struct SchrodParams {
    int d = 1;
    double p = 6.0;
    double nu = -0.5;
    double z = 3.0;
    double x = 5.0 / 3.0;

    static SchrodParams make(int d);
};

struct StrichartzConstant {
    int d = 1;
    double value = 0.0;
};

/// A_d = 4^{-d/(8+4d)} (1 + 2/d)^{-d^2/(8+4d)}.
StrichartzConstant strichartz_constant(int d);

/// c_m = (p/2) sum_j C(m+nu, m-j) C(m, j) (1-2/p)^{2m-2j} (2/p)^{2j}, summed in log space.
double cm_sum(const SchrodParams& params, int m);

/// p = 4 closed form 2 C(2m, m) / 4^m.
double cm_closed_p4(int m);

/// c_m = (p/2) Z^{-m} P_m^{(nu, 0)}(X). Throws DomainError at d = 2.
double cm_jacobi(const SchrodParams& params, int m);

/// c_m = (p/2) L_m^nu(0)^{-1} int L_m^nu(2r/p)^2 d mu(r), by quadrature. err_bound is absolute on c_m.
CertifiedValue cm_quad(const SchrodParams& params, int m, double tol = 1e-10);

struct CmRow {
    int m = 0;
    double cm = 0.0;
    /// max - min over the independent evaluations available for this m
    double method_spread = 0.0;
};

struct CmCertificate {
    int d = 1;
    int m_max = 2;
    double min_gap = 0.0;  // 1 - max_{m >= 2} c_m
    /// relative spread (max - min)/max of c_m sqrt(m) over the top half of the range
    double envelope_spread = 0.0;
    CertReport report;
    std::vector<CmRow> per_m;
};

/// Checks c_m < 1 - 1e-12 for 2 <= m <= m_max (FAIL otherwise) and that c_m sqrt(m) stays within
/// a 5% band over m in [m_max/2, m_max] (INCONCLUSIVE otherwise). Rows with m <= quad_m_max are
/// also cross-checked against cm_quad; disagreement beyond 1e-8 is INCONCLUSIVE.
CmCertificate cm_certificate(int d, int m_max, double tol = 1e-10, int quad_m_max = 10);

/// |L_m(lambda x)/L_m(0) - sum_j C(m, j) (1-lambda)^{m-j} lambda^j L_j(x)/L_j(0)|
double laguerre_scaling_check(int m, double nu, double lambda, double x);

/// G_m(x) = L_m^nu(2 pi |x|^2) e^{-pi |x|^2}, nu = d/2 - 1.
double laguerre_mode(int d, int m, double radius);

/// F_n(x) = prod_i H_{n_i}(sqrt(4 pi) x_i) e^{-pi |x|^2}.
double hermite_mode(const std::vector<int>& n, const std::vector<double>& x);

/// e^{it Delta} G_m at a point of radius |x|.
std::complex<double> schrod_evolve_laguerre(int d, int m, double t, double radius);

/// e^{it Delta} F_n at x; d = n.size() = x.size().
std::complex<double> schrod_evolve_hermite(int d, const std::vector<int>& n, double t,
                                           const std::vector<double>& x);

struct LensCheck {
    double gradient_norm = 0.0;
    double model_scale = 0.0;
    /// hessian entry for mode m divided by 2 (1 - c_m) L_m(0), for m = 2..m_max
    std::vector<double> diagonal_ratio;
    double max_offdiag = 0.0;    // over the block of modes m >= 2
    double diagonal_scale = 0.0;
    CertReport report;
};

/// Discretized second variation in Laguerre-mode coordinates: coefficient vectors a map to samples
/// of sum_m a_m L_m^nu(2r/p) e^{-2 pi i m s} on a Gauss-Laguerre (r) by uniform midpoint (s) grid,
/// with metric diag(L_m(0)) and reference element e_0.
LensCheck lens_model_check(int d, int m_max, int radial_nodes, int time_nodes, double tol = 1e-3);

}  // namespace sharpfr::schrod
