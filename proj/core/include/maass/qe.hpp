#pragma once

#include <complex>
#include <cstdint>

#include "maass/forms.hpp"
#include "maass/testfunction.hpp"
#include "maass/transforms.hpp"

namespace maass::qe {

// The shifted coefficient statistic sum_n rho(n+m) rho(n) psi(pi n / X) with
// rho(n) = sqrt(rho1_sq) lambda(n); for m = 0 the n < 0 mirror doubles the
// sum and the main term (8X/pi) int psi is subtracted.
struct QEReport {
    std::int64_t m = 0;
    double X = 0.0;
    double value = 0.0;
    double main_term = 0.0;
    double discrepancy = 0.0; // |value - main| / X
};

QEReport qe_sum(const forms::MaassForm& f, std::int64_t m, double X,
                const TestFunction& psi);

// The Hecke-factorized rewrite
//   rho1_sq sum_{d|m} sum_k lambda(k(k+d)) psi(pi (m/d) k / X),
// equal to the direct m >= 1 sum; the pivot identity of the analysis.
double qe_sum_factorized(const forms::MaassForm& f, std::int64_t m, double X,
                         const TestFunction& psi);

struct WindowedAverage {
    double sum_sq = 0.0;     // sum over |t_phi - T| < G of value^2
    double normalizer = 0.0; // X G T^{1+eps} ||psi||_{W^{A,inf}}^2
    double ratio = 0.0;
    int forms_used = 0;
};
WindowedAverage windowed_average(const forms::CoefficientCache& cache,
                                 const transforms::WindowKernel& w,
                                 std::int64_t m, double X,
                                 const TestFunction& psi, double eps = 0.1,
                                 int A = 8);

// (8X/pi) int_0^inf psi, plus raw Mellin access for diagnostics.
double mellin_main_term(const TestFunction& psi, double X);
std::complex<double> mellin_value(const TestFunction& psi,
                                  std::complex<double> s);

// Per-form normalized discrepancy at X = t_phi.
QEReport corollary_discrepancy(const forms::MaassForm& f, std::int64_t m,
                               const TestFunction& psi);

} // namespace maass::qe
