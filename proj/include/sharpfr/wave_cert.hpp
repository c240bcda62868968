#pragma once

#include <complex>
#include <vector>

#include <json.hpp>

#include "sharpfr/certified.hpp"
#include "sharpfr/table.hpp"

namespace sharpfr::wave {

/// Exponents of the cone setting: p = 2(d+1)/(d-1), nu_d = (d-1)/2, alpha = p/2.
struct WaveParams {
    int d = 3;
    double p = 4.0;
    double nu = 1.0;
    double alpha = 2.0;

    static WaveParams make(int d);
    bool even_dimension() const { return d % 2 == 0; }
};

/// sqrt(2/(d-1)) pi^{1/p} |S^d|^{1/p - 1/2}; d odd and >= 3.
double c_star(int d);

/// int_{-pi}^{pi} |cos(nu_d T)|^p dT = 2 sqrt(pi) Gamma((p+1)/2) / Gamma((p+2)/2).
double time_normalization(const WaveParams& params);

/// The same integral by quadrature between consecutive zeros of cos(nu_d T).
CertifiedValue time_normalization_quad(const WaveParams& params, double tol = 1e-12);

/// Coefficient a_h of |cos(beta T)|^{2 alpha} = a_0 + sum_{h>=1} a_h cos(2 h beta T).
double cosine_coeff(double alpha, int h);

/// sup over `grid` of |partial sum through h = H - |cos(beta T)|^{2 alpha}|.
double fourier_series_residual(double alpha, double beta, int h_max, const std::vector<double>& grid);

/// |Gamma(alpha)^2 / (Gamma(alpha+h) Gamma(alpha-h))| without evaluating Gamma at negative
/// arguments; exactly 0 when alpha is an integer <= h.
double abs_gamma_ratio(double alpha, int h);

/// |(p-1) Gamma((p+2)/2) Gamma((p-1)/2) / (Gamma((p+1)/2) Gamma(p/2)) - p|
double gamma_identity_residual(double p);

struct CSharpScan {
    int argmax = 1;
    double max_value = 0.0;
    std::vector<double> values;       // C(h) for h = 1..h_max
    bool strictly_decreasing = true;
    double c1_scanned = 0.0;          // p + p |Gamma ratio at h = 1| = 2p - 2
    double c1_closed = 0.0;           // p + (p-2)/p
};

/// C(h) = p + p |Gamma(p/2)^2 / (Gamma(p/2+h) Gamma(p/2-h))| for h = 1..h_max.
CSharpScan c_sharp_scan(const WaveParams& params, int h_max);

/// True iff g(alpha, h) = Gamma(h-alpha+1)/Gamma(alpha+h) strictly decreases for 1 <= h < h_max.
bool g_monotone_check(double alpha, int h_max);

/// Per-mode ratio [p + p |Gamma ratio at h = ell/nu_d| [nu_d divides ell]] nu_d / (ell + nu_d).
double mode_ratio(const WaveParams& params, int ell);

struct ModeCoercivity {
    CoeffTable table;  // d, ell, ratio, rho_implied
    double sup_ratio = 0.0;
    int argsup = 2;
    double rho_implied = 0.0;  // 2 - sup_ratio
    double rho_claimed = 0.0;  // 1/(nu_d + 1)
};

ModeCoercivity mode_coercivity_table(const WaveParams& params, int ell_max);

/// p nu_d / (ell + nu_d), ell >= 2.
double half_wave_mode_ratio(const WaveParams& params, int ell);

struct OrthogResiduals {
    double first = 0.0;   // |int (Re z e^{iT ell})^2 dT_ - formula|
    double second = 0.0;  // same for the cos(2 h nu_d T) weighted integral
    double first_value = 0.0;
    double second_value = 0.0;
};

/// Both orthogonality integrals by quadrature against the normalized measure dT_.
OrthogResiduals orthog_formula_check(std::complex<double> z, int ell, int h, const WaveParams& params);

/// Real dimension 2(d+2) of the tangent space at the optimizer.
int tangent_dim(int d);

/// Full audit of the cone-side constants for one dimension.
struct WaveAudit {
    CertReport report;
    ModeCoercivity modes;
    CSharpScan scan;
    nlohmann::ordered_json json;
};

WaveAudit wave_audit(int d, int ell_max = 200, int h_max = 1000);

}  // namespace sharpfr::wave
