#pragma once

#include <vector>

#include "sharpfr/certified.hpp"
#include "sharpfr/table.hpp"

namespace sharpfr::sphere {

/// Landau's constant: r^{1/3} |J_alpha(r)| < L for all r, alpha >= 0.
inline constexpr double kLandau = 0.7857468705;

inline constexpr double kDefaultRadius = 2000.0;
inline constexpr double kDefaultTol = 1e-9;

/// Exponents of the sphere setting in dimension d.
struct SphereParams {
    int d = 3;
    double p = 4.0;       // 2(d+1)/(d-1)
    double nu = 0.5;      // d/2 - 1
    double lambda = 2.0 / 3.0;  // (3d-5)/(3d-3)

    /// Throws DomainError for d < 2.
    static SphereParams make(int d);
};

/// Truncated coefficient integral
///     c_k(R) = int_0^R |A_nu|^{p-2} A_{nu+k}^2 r^{2nu+1+2k} dr
/// with err_bound = quadrature error + int_R^inf r^-2 dr. The tail part is one-sided.
///
/// Requires R >= (3/2)(nu+k), k <= 64 and d <= 60 unless `allow_uncertified_d` is set.
CertifiedValue ck_estimate(const SphereParams& params, int k, double radius = kDefaultRadius,
                           double tol = kDefaultTol, bool allow_uncertified_d = false);

/// Closed-form majorant b_k of c_k built from Landau's bound.
double bk_upper(const SphereParams& params, int k);

/// True iff b_k > b_{k+1} for 1 <= k < k_max.
bool bk_decreasing_check(const SphereParams& params, int k_max);

struct IdentityCheck {
    double residual = 0.0;  // |c_0 - (p-1) c_1| / c_0
    double bound = 0.0;     // (err(c_0) + (p-1) err(c_1)) / c_0
};

IdentityCheck remarkable_identity(const SphereParams& params, double radius = kDefaultRadius,
                                  double tol = kDefaultTol);

double remarkable_identity_residual(const SphereParams& params, double radius = kDefaultRadius,
                                    double tol = kDefaultTol);

/// Estimated tail of c_0 beyond R: the mean of |J_nu|^p over a period gives
/// M_p (2/pi)^{p/2} / R with M_p = Gamma((p+1)/2) / (sqrt(pi) Gamma(p/2+1)).
double c0_tail_estimate(const SphereParams& params, double radius);

/// (2 pi)^{d/2} |S^{d-1}|^{-1/(d+1)} c_0^{1/p}, with c_0 = c_0(R) + tail estimate.
/// err_bound covers c_0 in [c_0(R) - quad, c_0(R) + quad + 1/R].
CertifiedValue tomas_stein_constant(const SphereParams& params, double tol = kDefaultTol,
                                    double radius = kDefaultRadius);

/// Which k are checked by quadrature and where the closed-form tail takes over.
struct KSplit {
    int k_numeric = 3;
    int k_tail = 4;
    /// The range k >= k_numeric + 1 rests on an external result instead of b_k.
    bool tail_cited = false;
};

/// The k-ranges used for the reference tables: d=2 numeric through 6 with k >= 7 cited,
/// d=3 through 7, d=4,5 through 4, d >= 6 through 3.
KSplit default_k_split(int d);

struct GapOptions {
    KSplit split;
    double radius = kDefaultRadius;
    double tol = kDefaultTol;
    int bk_horizon = 200;
};

/// Numeric inputs of one dimension's certificate and table rows.
struct SphereSweepRow {
    SphereParams params;
    KSplit split;
    CertifiedValue c0;
    std::vector<CertifiedValue> ck;  // k = 2 .. split.k_numeric
};

SphereSweepRow sweep_dimension(int d, const GapOptions& opts, bool allow_uncertified_d = false);

/// Runs sweep_dimension for d in [d_min, d_max] on `jobs` threads (default k-splits).
std::vector<SphereSweepRow> sweep(int d_min, int d_max, double radius, double tol, int jobs,
                                  bool allow_uncertified_d = false);

/// Certificate for (1 - eps) c_0 > (p - 1) c_k, k >= 2, from precomputed integrals.
CertReport gap_certificate(const SphereSweepRow& row, int bk_horizon = 200);

CertReport gap_certificate(const SphereParams& params, const GapOptions& opts);

/// Smallest eigenvalue of the Hermitian Gram matrix of the radial kernel
///     b_k(t, r1, r2) = int_{-1}^1 e^{-(A + pi i t) r1^2 - (A - pi i t) r2^2 + A r1 r2 a}
///                      [1 - C_k^nu(a)/C_k^nu(1)] (1 - a^2)^{nu - 1/2} da,
/// A = (1 + t^2)/(p - 2) with the paraboloid exponent p = 2 + 4/d.
struct KernelSpectrum {
    double min_eigenvalue = 0.0;
    double frobenius_norm = 0.0;
};

KernelSpectrum kernel_spectrum(const SphereParams& params, int k, double t,
                               const std::vector<double>& points);

double kernel_psd_min_eig(const SphereParams& params, int k, double t,
                          const std::vector<double>& points);

struct SphereTables {
    CoeffTable thresholds;  // d, pm1_bk_threshold, k_threshold, c0_tilde
    CoeffTable cells;       // d, k, pm1_ck_upper, c0_tilde
};

/// Slack added to c_k(R) before scaling: quadrature budget 1e-5 plus the r^-2 tail 5e-4.
inline constexpr double kTableSlack = 5.1e-4;

SphereTables emit_tables(const std::vector<SphereSweepRow>& rows);

SphereTables emit_tables(int d_min, int d_max, double radius = kDefaultRadius,
                         double tol = kDefaultTol, int jobs = 1);

}  // namespace sharpfr::sphere
