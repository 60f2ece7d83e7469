#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace maass::quad {

// Gauss-Legendre nodes/weights on [-1, 1], generated once per order by
// Newton iteration on the Legendre recurrence.
std::span<const double> gl_nodes(int n);
std::span<const double> gl_weights(int n);

template <class T>
struct Result {
    T value{};
    double error = 0.0;       // accumulated error estimate (absolute)
    int panels = 0;
    double worst_lo = 0.0;    // worst remaining panel, for diagnostics
    double worst_hi = 0.0;
    bool converged = false;
};

// Globally adaptive bisection with an embedded GL10/GL20 pair per panel.
// Stops when the total error estimate drops below
// max(abs_tol, rel_tol * |value|).
Result<double> integrate(const std::function<double(double)>& f, double a,
                         double b, double abs_tol, double rel_tol = 0.0,
                         int max_panels = 4000);

Result<std::complex<double>> integrate_c(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double abs_tol, double rel_tol = 0.0, int max_panels = 4000);

// Single fixed Gauss-Legendre panel.
double gl_panel(const std::function<double(double)>& f, double a, double b,
                int n);
std::complex<double> gl_panel_c(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    int n);

} // namespace maass::quad
