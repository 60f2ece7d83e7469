#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "maass/chebyshev.hpp"
#include "maass/testfunction.hpp"

namespace maass::transforms {

// Even Gaussian spectral window h_{T,G}(y) = e^{-((y-T)/G)^2} + e^{-((y+T)/G)^2}.
struct WindowKernel {
    double T, G;
    std::optional<double> theta; // set when constructed as G = T^theta

    WindowKernel(double T_, double G_);
    static WindowKernel from_theta(double T_, double theta_);

    double operator()(double y) const;
    double support_hi() const { return T + 13.0 * G; } // h < 1e-73 beyond
};

// Bessel transforms of the window:
//   g(x)      = int_R  J_{2iy}(x) h(y) y / cosh(pi y) dy   (purely imaginary)
//   g~(x)     = int_0^inf same integrand
// Evaluated through the exact rewrite
//   Re g~(x) =  (2/pi) int_0^inf sin(x cosh xi) H0(xi) dxi
//   Im g~(x) = -(2/pi) int_0^inf cos(x cosh xi) H1(xi) dxi
// with H0, H1 the cosine transforms of y h(y) and tanh(pi y) y h(y),
// tabulated once per window. g = g~ - conj(g~) = 2i Im g~.
class BesselTransform {
  public:
    explicit BesselTransform(WindowKernel w, double tol = 1e-10);

    std::complex<double> g(double x) const;
    std::complex<double> g_tilde(double x) const;
    double tol() const { return tol_; }
    const WindowKernel& window() const { return w_; }

    // Definitional route through J_{2iy}(x)/cosh evaluations; the slow
    // cross-check oracle for the tabulated path.
    std::complex<double> g_direct(double x, double tol) const;
    std::complex<double> g_tilde_direct(double x, double tol) const;

    // Certified constant C with |Im g~(x)| <= C x^2 on (0, x_hi]: measured
    // over a log grid through the subtracted evaluation path, with margin and
    // a noise-floor term. The window cancellation makes C window-specific
    // and usually far below G.
    double lemma_smallx_constant(double x_hi) const;

  private:
    double head_integral(bool use_cos, double x, bool subtract_one) const;
    double head_im_subtracted(double x) const;
    double effective_cut(bool use_cos, double x) const;
    WindowKernel w_;
    double tol_;
    double xi_cut_;
    ChebSeries H0_, H1_;
};

// Large-argument surrogate for g~: the phase-corrected kernel
//   g_{k,N}(y,x) = (4y^2+x^2)^{-k/2-1/4} exp(i x + i sum c_m y^{2m}/x^{2m-1})
// with closed-form phase coefficients (c_1 = -2) and a stationary-phase
// leading constant sqrt(2/pi) e^{-i pi/4}; optional fitted corrections.
struct AsymptoticExpansion {
    int terms = 4;                                  // N: phase coefficients used
    std::complex<double> leading;                   // weight of the k=0 term
    std::vector<std::complex<double>> corrections;  // weights of k = 1, 2, ...
    std::vector<double> phase_coeffs;               // c_1..c_{N-1}

    static AsymptoticExpansion standard(int N = 4);
};

double phase_coefficient(int m); // closed-form c_m

// Term integral I_k(x) = int_0^inf g_{k,N}(y,x) y h(y) dy.
std::complex<double> g_asymptotic_term(const AsymptoticExpansion& a,
                                       const WindowKernel& w, double x, int k,
                                       double tol = 1e-11);
// leading * I_0 + sum corrections[k-1] * I_k. Throws std::domain_error
// outside the regime x > G T^{1-eps}.
std::complex<double> g_asymptotic_sum(const AsymptoticExpansion& a,
                                      const WindowKernel& w, double x,
                                      double eps, double tol = 1e-11);
bool asymptotic_regime_ok(const WindowKernel& w, double x, double eps);

// Oscillatory phase of the shifted-convolution analysis: for r1, r2 near R,
//   Delta = sqrt(r1 r2 (r1+d)(r2+d)),
//   phi = alpha(4 pi Delta / c) + (4 pi / c)(Delta - r1 r2 - d r1/2 - d r2/2),
//   f = psi(r1/R) psi(r2/R) (4y^2 + (4 pi Delta/c)^2)^{-k/2 - 1/4} e^{i phi}.
class OscillatoryPhase {
  public:
    OscillatoryPhase(std::int64_t c, std::int64_t d, double y, double R,
                     TestFunction psi, int k = 0, int n_phase = 5);

    double c() const { return c_; }
    double d() const { return d_; }
    double y() const { return y_; }
    double R() const { return R_; }
    const TestFunction& psi() const { return psi_; }

    double delta(double r1, double r2) const;
    double delta_r1(double r1, double r2) const;
    double alpha(double x) const;
    double phi(double r1, double r2) const;
    double amplitude(double r1, double r2) const;          // the g_c factor
    std::complex<double> f(double r1, double r2) const;    // g_c e^{i phi}
    std::complex<double> g_kn(double y, double x) const;   // surrogate kernel

    // Analytic partials of phi (first and second order).
    double phi_r(int i, double r1, double r2) const;
    double phi_rr(int i, int j, double r1, double r2) const;

    // Regime predicate of the analysis: d R^{eps2} << c, d << R^{1-delta},
    // c << R^2 G^{-1} T^{-1+eps1} with the module's fixed epsilons.
    bool regime_ok(double T, double G) const;

    struct DerivativeReport {
        int k1, k2;
        double measured_max;   // max |d^{k1+k2} phi| over the probe grid
        double measured_min;
        double predicted;      // c T^2 R^{-2-k1-k2}
        double ratio_max, ratio_min;
    };
    // Finite-difference probe over r in [R, 2R]^2 (5-point stencils with one
    // Richardson step), k1 + k2 <= 4.
    DerivativeReport derivative_check(int k1, int k2, int grid = 5) const;

    struct HessianReport {
        double det_min, det_max;
        double predicted; // c^2 T^4 / R^8
    };
    HessianReport hessian_check(int grid = 5) const;

  private:
    double c_, d_, y_, R_;
    TestFunction psi_;
    int k_;
    std::vector<double> cm_;
};

struct Quad2D {
    std::complex<double> value;
    double error = 0.0;
    long evals = 0;
};

// int int_D amp * e^{i phi(r1,r2)} e^{i(th1 r1 + th2 r2)} dr1 dr2 by
// panel-Filon: per panel the smooth factor (amplitude and e^{i phi}) is
// Chebyshev-fit and the linear exponential integrated by moments.
Quad2D oscillatory_double_integral(const OscillatoryPhase& p, double lo1,
                                   double hi1, double lo2, double hi2,
                                   double th1, double th2, bool weighted,
                                   int panels_per_dim = 14, int degree = 12);

struct PoissonReport {
    std::complex<double> B00;
    double tail_sum_abs = 0.0;       // sum_{(j,k) != 0} |B(j,k)|
    double tail_ratio = 0.0;         // tail_sum_abs / |B00|
    std::complex<double> lattice_sum;
    std::complex<double> poisson_sum; // sum over |j|,|k| <= J
    double lattice_rel_err = 0.0;
};

// B(j,k) = int int f e_c(-u r1 - v r2) e(j r1 + k r2); checks the lattice-sum
// identity and measures the nonzero-mode tail.
PoissonReport poisson_tail_check(const OscillatoryPhase& p, std::int64_t u,
                                 std::int64_t v, int J);

} // namespace maass::transforms
