#pragma once

// Arbitrary-precision oracles for the special-function tests, built on MPFR
// tanh-sinh quadrature of the defining integral representations. Test-only:
// the library itself never links MPFR.

namespace oracle {

// K_{it}(x) by int_0^inf e^{-x cosh u} cos(t u) du at 320-bit precision.
double k_bessel_imag(double t, double x);

// e^{pi t / 2} K_{it}(x), scaled inside MPFR before rounding to double.
double k_bessel_imag_scaled(double t, double x);

} // namespace oracle
