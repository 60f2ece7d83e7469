#pragma once

#include <complex>

namespace maass::bessel {

// K_{it}(x) and J_{2iy}(x) for real order parameters and real x > 0.
//
// K_{it} is exponentially small (~e^{-pi t/2}) in the order, so the scaled
// kernel e^{pi t/2} K_{it}(x) is the workhorse; the unscaled value carries an
// underflow flag once the exponential decay in x drops below DBL_MIN.
// Strategy switching by (order, argument) region:
//   series   x <= ~2 sqrt(t), power series with scaled reciprocal Gamma
//   oscillatory   x below the transition, Mehler-Sonine integral
//                 (1/cosh(pi t/2)) int_0^inf cos(x sinh u) cos(tu) du
//                 with a shifted-contour tail
//   saddle   x above the transition, the non-oscillatory steepest-descent
//            form K = (1/2) e^{-(p + t asin(t/x))} int e^{-p(cosh v - 1)}
//            cos(t(sinh v - v)) dv, p = sqrt(x^2 - t^2)
// Validated on x in [1e-3, 10t], t <= 200 against an arbitrary-precision
// integral oracle; see tests.

struct KResult {
    double value = 0.0;
    bool underflow = false;
};

// K_{it}(x). Throws std::domain_error for x <= 0.
KResult k_imag(double t, double x);

// e^{pi |t|/2} K_{it}(x). Returns 0 when even the scaled value underflows.
double k_imag_scaled(double t, double x);

// Rigorous upper bound for e^{pi t/2} K_{it}(u), cheap to evaluate; used for
// truncation certificates of K-Bessel Fourier tails.
double k_scaled_envelope(double t, double u);

// J_{2iy}(x). Throws std::domain_error for x <= 0, std::overflow_error when
// cosh(pi y) overflows.
std::complex<double> j_imag(double y, double x);

// J_{2iy}(x) / cosh(pi y), well-scaled for all y.
std::complex<double> j_imag_scaled(double y, double x);

// J_{2iy+2}(x) for x in (0,1) by power series with a certified tail bound.
// Throws std::domain_error outside (0,1).
std::complex<double> j_imag_shifted(double y, double x);

namespace detail {

// Power-series J_{2iy+n}(x) for small integer shifts n >= 0; double-double
// accumulation. Usable while the series growth stays within the certified
// window (roughly x <= 50 for |2y| <= 50); throws std::domain_error beyond.
std::complex<double> j_series_shift(double y, int n, double x);

// Scaled oscillatory integrals int_0^inf {cos,sin}(x cosh u) cos(mu u) du.
struct CosSinPair {
    double c, s;
    double err;
};
CosSinPair mehler_sonine(double x, double mu, double tol);

// int_0^inf cos(x sinh u) cos(t u) du = cosh(pi t / 2) K_{it}(x).
double k_oscillatory_integral(double t, double x, double tol);

} // namespace detail
} // namespace maass::bessel
