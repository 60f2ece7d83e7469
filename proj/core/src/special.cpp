#include "maass/special.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace maass::special {

namespace {

// B_{2n}/(2n(2n-1)) for the Stirling series.
constexpr std::array<double, 9> kStirling = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
};

// Bernoulli numbers B_2, B_4, ... for Euler-Maclaurin.
constexpr std::array<double, 10> kBernoulli = {
    1.0 / 6.0,       -1.0 / 30.0,      1.0 / 42.0,      -1.0 / 30.0,
    5.0 / 66.0,      -691.0 / 2730.0,  7.0 / 6.0,       -3617.0 / 510.0,
    43867.0 / 798.0, -174611.0 / 330.0,
};

} // namespace

std::complex<double> lgamma_complex(std::complex<double> z) {
    if (z.real() <= 0.0)
        throw std::domain_error("lgamma_complex: Re z must be positive");
    std::complex<double> shift = 0.0;
    while (std::abs(z) < 12.0) {
        shift -= std::log(z);
        z += 1.0;
    }
    const double half_log_two_pi = 0.5 * std::log(2.0 * std::numbers::pi);
    std::complex<double> res =
        (z - 0.5) * std::log(z) - z + half_log_two_pi;
    std::complex<double> zp = z;
    std::complex<double> z2 = z * z;
    for (double c : kStirling) {
        res += c / zp;
        zp *= z2;
    }
    return res + shift;
}

std::complex<double> zeta(std::complex<double> s) {
    if (std::abs(s - 1.0) < 1e-12)
        throw std::domain_error("zeta: pole at s = 1");
    const int N = 48;
    std::complex<double> sum = 0.0;
    for (int n = 1; n < N; ++n) sum += std::pow(double(n), -s);
    std::complex<double> Ns = std::pow(double(N), -s);
    sum += Ns * (double(N) / (s - 1.0) + 0.5);
    // Correction terms: sum_k B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}.
    std::complex<double> poch = s;      // rising factorial accumulator
    std::complex<double> Npow = Ns / double(N); // N^{-s-1}
    double fact = 2.0;                  // (2k)!
    for (std::size_t k = 1; k <= kBernoulli.size(); ++k) {
        sum += kBernoulli[k - 1] / fact * poch * Npow;
        // advance: poch *= (s+2k-1)(s+2k), fact *= (2k+1)(2k+2), Npow /= N^2
        poch *= (s + double(2 * k - 1)) * (s + double(2 * k));
        fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
        Npow /= double(N) * double(N);
    }
    return sum;
}

} // namespace maass::special
