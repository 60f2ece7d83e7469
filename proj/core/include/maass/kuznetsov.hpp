#pragma once

#include <cstdint>

#include "maass/forms.hpp"
#include "maass/transforms.hpp"

namespace maass::kuznetsov {

// Both-sides check of the trace identity at fixed Fourier indices (n, m):
//   sum_phi h(t_phi) rho(n) rho(m)  +  Eisenstein term
//     = delta_{nm} (1/pi^2) int tanh(pi y) h(y) y dy
//       + K sum_c S(n,m,c)/c * Im g~(4 pi sqrt(nm) / c)
// with rho(n) rho(m) = rho1_sq * lambda(n) lambda(m).
//
// The Eisenstein normalization c_E and the Kloosterman prefactor K below
// were fixed once by closing the (n,m) = (1,1) and (1,2) identities on two
// windows ((T,G) = (12,3) and (16,2.5)) and then frozen; the residual tests
// run against these constants unchanged.
inline constexpr double kEisensteinNorm = 1.0;  // multiplies (1/pi) int ...
inline constexpr double kKloostermanNorm = -4.0; // multiplies (1/pi) sum_c ...

struct TraceCheckConfig {
    transforms::WindowKernel w;
    std::int64_t n = 1, m = 1;
    double t_max = 40.0;
    std::int64_t c_max = 10000;
    double tol = 1e-3;
    double quad_tol = 1e-10; // internal quadrature/table tolerance

    TraceCheckConfig(transforms::WindowKernel w_, std::int64_t n_,
                     std::int64_t m_, double t_max_, std::int64_t c_max_,
                     double tol_, double quad_tol_ = 1e-10);
};

struct SideBreakdown {
    double cusp = 0.0;       // sum over cached forms
    double eisenstein = 0.0; // continuous spectrum
    double diagonal = 0.0;   // delta_{nm} term
    double kloosterman = 0.0;
    double c_tail_bound = 0.0; // certified bound for c > c_max
    double spectral() const { return cusp + eisenstein; }
    double geometric() const { return diagonal + kloosterman; }
};

double spectral_side(const TraceCheckConfig& cfg,
                     const forms::CoefficientCache& cache);
double geometric_side(const TraceCheckConfig& cfg);
double trace_residual(const TraceCheckConfig& cfg,
                      const forms::CoefficientCache& cache);
SideBreakdown trace_breakdown(const TraceCheckConfig& cfg,
                              const forms::CoefficientCache& cache);

// Pieces exposed for tests.
double diagonal_term(const transforms::WindowKernel& w, std::int64_t n,
                     std::int64_t m, double quad_tol = 1e-10);
double eisenstein_term(const transforms::WindowKernel& w, std::int64_t n,
                       std::int64_t m, double t_max, double quad_tol = 1e-10);
double kloosterman_term(const transforms::WindowKernel& w, std::int64_t n,
                        std::int64_t m, std::int64_t c_max,
                        double* tail_bound = nullptr, double quad_tol = 1e-10);

} // namespace maass::kuznetsov
