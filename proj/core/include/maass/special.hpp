#pragma once

#include <complex>

namespace maass::special {

// Principal branch of log Gamma(z) for Re z > 0 (Stirling with upward
// recurrence shift). Accuracy ~1e-13 relative on the region used here.
std::complex<double> lgamma_complex(std::complex<double> z);

inline std::complex<double> gamma_complex(std::complex<double> z) {
    return std::exp(lgamma_complex(z));
}

// Riemann zeta for complex s off the pole, Euler-Maclaurin. Intended for
// Re s >= 1/2, |Im s| <= ~200.
std::complex<double> zeta(std::complex<double> s);

} // namespace maass::special
