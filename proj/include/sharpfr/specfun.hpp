#pragma once

#include <cstdint>
#include <vector>

namespace sharpfr::specfun {

/// log Gamma(x) for x > 0.
double ln_gamma(double x);

/// log C(n, k) for real n, k with n - k > -1 and k > -1, via log-Gamma.
double ln_binom(double n, double k);

/// Bessel function of the first kind J_order(x).
///
/// Only integer and half-integer orders are supported, on the envelope
/// 0 <= order <= 64, 0 <= x <= 1e4. Absolute accuracy is about 1e-14 there.
double bessel_j(double order, double x);

/// Normalized Bessel profile A_order(x) = J_order(x) / x^order, with A_order(0) = 2^-order / Gamma(order+1).
double bessel_a(double order, double x);

/// Positive zeros of J_order strictly below `upto`, in increasing order.
std::vector<double> bessel_zeros(double order, double upto);

namespace detail {
// Same algorithms as above with a wider order envelope (order <= 160); used where a caller
// has already validated its own parameter ranges (J_{nu+k} with nu up to ~100).
double bessel_j(double order, double x);
double bessel_a(double order, double x);
}  // namespace detail

/// Generalized Laguerre polynomial L_m^nu(x), three-term recurrence.
double laguerre(int m, double nu, double x);

/// L_m^nu(0) = C(nu+m, m).
double laguerre_at_zero(int m, double nu);

/// Monic Hermite polynomial (probabilists' normalization): H_{n+1} = x H_n - n H_{n-1}.
double hermite_monic(int n, double x);

/// Gegenbauer polynomial C_k^nu(x).
double gegenbauer(int k, double nu, double x);

/// C_k^nu(x) / C_k^nu(1). For nu == 0 this is the Chebyshev limit T_k(x).
double gegenbauer_ratio(int k, double nu, double x);

/// Jacobi polynomial P_m^{(a,b)}(x).
double jacobi_p(int m, double a, double b, double x);

/// Z^{-m} P_m^{(a,b)}(X) evaluated with a rescaled recurrence, so that the growth of
/// P_m at |X| > 1 never overflows.
double jacobi_p_scaled(int m, double a, double b, double x, double z);

/// Generalized binomial alpha (alpha-1) ... (alpha-h+1) / h!.
double binom_real(double alpha, int h);

/// Number of degree-ell spherical harmonics on S^d.
std::int64_t sph_harm_count(int d, int ell);

/// Fourier transform of the surface measure of S^{d-1} at radius r: (2 pi)^{d/2} A_{d/2-1}(r).
double sigma_hat(int d, double r);

/// Area of the unit sphere S^n in R^{n+1}.
double sphere_area(int n);

enum class Family { Laguerre, HermiteMonic, Gegenbauer, Jacobi };

/// A member of one of the orthogonal polynomial families, with its parameters.
struct PolyFamily {
    Family family = Family::Laguerre;
    int degree = 0;
    double a = 0.0;  // nu for Laguerre/Gegenbauer, alpha for Jacobi
    double b = 0.0;  // beta for Jacobi

    /// Throws DomainError if the parameters are outside the family's admissible range.
    void validate() const;
    double operator()(double x) const;
};

}  // namespace sharpfr::specfun
