#include "maass/bessel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "maass/arith.hpp"
#include "maass/dd.hpp"
#include "maass/quadrature.hpp"
#include "maass/special.hpp"

namespace maass::bessel {

namespace {

using std::numbers::pi;
using C = std::complex<double>;

// ---------------------------------------------------------------------------
// Complex double-double, just enough for the J power series.

struct CDD {
    DD re, im;
};

CDD cdd_add(CDD a, CDD b) { return {dd::add(a.re, b.re), dd::add(a.im, b.im)}; }

CDD cdd_scale(CDD a, double s) {
    return {dd::mul(a.re, s), dd::mul(a.im, s)};
}

// a * (x + iy) for double x, y.
CDD cdd_mul_c(CDD a, double x, double y) {
    DD re = dd::add(dd::mul(a.re, x), dd::mul(a.im, -y));
    DD im = dd::add(dd::mul(a.re, y), dd::mul(a.im, x));
    return {re, im};
}

CDD cdd_div_dd(CDD a, DD d) {
    return {dd::div(a.re, d), dd::div(a.im, d)};
}

// a / (x + iy), norm and quotient kept in double-double.
CDD cdd_div_c(CDD a, double x, double y) {
    DD n = dd::add(dd::two_prod(x, x), dd::two_prod(y, y));
    CDD t = cdd_mul_c(a, x, -y);
    return cdd_div_dd(t, n);
}

double cdd_abs(CDD a) { return std::hypot(a.re.to_double(), a.im.to_double()); }

// ---------------------------------------------------------------------------
// Oscillatory engine: int_0^inf trig(x*k(t)) cos(mu t) dt, k = sinh or cosh.
// Finite head by period-sized Gauss-Legendre panels, tail by rotating the
// contour to Im t = pi/2 where the integrand decays.

enum class Kern { Sinh, Cosh };

struct EngineOut {
    double c = 0.0; // cos version
    double s = 0.0; // sin version
    double err = 0.0;
};

double kval(Kern k, double t) { return k == Kern::Sinh ? std::sinh(t) : std::cosh(t); }
double kder(Kern k, double t) { return k == Kern::Sinh ? std::cosh(t) : std::sinh(t); }
DD kval_dd(Kern k, double t) { return k == Kern::Sinh ? dd::sinh(DD(t)) : dd::cosh(DD(t)); }

EngineOut osc_integral(double x, double mu, Kern kern, double tol, bool use_dd) {
    EngineOut out;
    const double P = std::max({3.0 * mu + 10.0, 40.0, 1.2 * x});
    const double ratio = P / x;
    const double t_c = (kern == Kern::Sinh) ? std::acosh(std::max(1.0, ratio))
                                            : std::asinh(ratio);

    // Head: [0, t_c], panel per ~1.4 periods of the fastest phase.
    auto nodes16 = quad::gl_nodes(16);
    auto w16 = quad::gl_weights(16);
    auto nodes24 = quad::gl_nodes(24);
    auto w24 = quad::gl_weights(24);
    KahanSum accC, accS;
    double t = 0.0;
    while (t < t_c - 1e-12 * (t_c + 1.0)) {
        double F = x * kder(kern, t) + mu;
        double curv = std::sqrt(4.4 * (x * kval(kern, t) + 1.0));
        double h = std::min({0.5, 8.8 / (F + 2.0 + curv)});
        if (t + h > t_c) h = t_c - t;
        double c16 = 0, s16 = 0, c24 = 0, s24 = 0;
        double mid = t + 0.5 * h, half = 0.5 * h;
        for (int i = 0; i < 24; ++i) {
            double u = mid + half * nodes24[i];
            double cth, sth;
            if (use_dd) {
                DD th = dd::mul(kval_dd(kern, u), x);
                cth = dd::cos_reduced(th);
                sth = dd::sin_reduced(th);
            } else {
                double theta = x * kval(kern, u);
                cth = std::cos(theta);
                sth = std::sin(theta);
            }
            double cm = std::cos(mu * u) * w24[i] * half;
            c24 += cth * cm;
            s24 += sth * cm;
        }
        for (int i = 0; i < 16; ++i) {
            double u = mid + half * nodes16[i];
            double cth, sth;
            if (use_dd) {
                DD th = dd::mul(kval_dd(kern, u), x);
                cth = dd::cos_reduced(th);
                sth = dd::sin_reduced(th);
            } else {
                double theta = x * kval(kern, u);
                cth = std::cos(theta);
                sth = std::sin(theta);
            }
            double cm = std::cos(mu * u) * w16[i] * half;
            c16 += cth * cm;
            s16 += sth * cm;
        }
        accC.add(c24);
        accS.add(s24);
        out.err += std::abs(c24 - c16) + std::abs(s24 - s16);
        t += h;
    }

    // Tail above t_c for each exponential piece e^{i(x k(t) + sigma mu t)}.
    DD theta_c = dd::mul(kval_dd(kern, t_c), x); // x k(t_c), exact-ish
    const double theta_cd = theta_c.to_double();
    C tail_sum = 0.0;
    for (int sigma = +1; sigma >= -1; sigma -= 2) {
        DD phi0 = dd::add(theta_c, dd::mul(DD(t_c), sigma * mu));
        C e0(dd::cos_reduced(phi0), dd::sin_reduced(phi0));
        // Vertical leg: i e0 int_0^{pi/2} e^{i theta_c (cos s - 1)}
        //                e^{-P sin s - sigma mu s} ds.
        auto vint = quad::integrate_c(
            [&](double s) {
                double damp = -P * std::sin(s) - sigma * mu * s;
                if (damp < -60.0) return C(0.0, 0.0);
                double ph = theta_cd * (std::cos(s) - 1.0);
                return std::exp(C(damp, ph));
            },
            0.0, 0.5 * pi, 0.05 * tol, 0.0, 600);
        C V = C(0, 1) * e0 * vint.value;
        out.err += vint.error;
        // Top leg: e^{-sigma mu pi/2} int_{t_c}^{A} e^{-x k'(a)} e^{i sigma mu a} da.
        double damp0 = P - sigma * mu * 0.5 * pi;
        C H(0.0, 0.0);
        if (damp0 < 50.0) {
            double target = (P + 55.0) / x;
            double A = (kern == Kern::Sinh) ? std::acosh(std::max(1.0, target))
                                            : std::asinh(target);
            auto hint = quad::integrate_c(
                [&](double a) {
                    double d = -x * kder(kern, a) - sigma * mu * 0.5 * pi;
                    if (d < -120.0) return C(0.0, 0.0);
                    return std::exp(C(d, sigma * mu * a));
                },
                t_c, std::max(A, t_c + 1e-8), 0.05 * tol, 0.0, 400);
            H = hint.value;
            out.err += hint.error;
        } else {
            out.err += std::exp(-damp0);
        }
        tail_sum += V + H;
    }
    out.c = accC.value() + 0.5 * tail_sum.real();
    out.s = accS.value() + 0.5 * tail_sum.imag();
    return out;
}

// ---------------------------------------------------------------------------
// K_{it}: power series (scaled), oscillatory region, saddle region.

double sinh_minus_t(double v) {
    if (v >= 0.25) return std::sinh(v) - v;
    double v2 = v * v;
    return v * v2 * (1.0 / 6.0 + v2 * (1.0 / 120.0 + v2 * (1.0 / 5040.0 + v2 / 362880.0)));
}

double k_series_scaled(double t, double x) {
    // e^{pi t/2} K_{it}(x) = -2 pi e^{-pi t/2}/(1 - e^{-2 pi t})
    //                        * Im[(x/2)^{it} sum_k (x^2/4)^k / (k! Gamma(k+1+it))]
    C lg = special::lgamma_complex(C(1.0, t));
    C w = std::exp(-lg); // 1/Gamma(1+it), |w| ~ e^{pi t/2}
    C term = w;
    C sum = term;
    double x24 = 0.25 * x * x;
    for (int k = 1; k < 400; ++k) {
        term *= x24 / (double(k) * C(double(k), t));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    double L = std::log(0.5 * x);
    C rot = std::exp(C(0.0, t * L));
    double scale = std::exp(-0.5 * pi * t);
    double im = std::imag(rot * (sum * scale));
    return -2.0 * pi / (1.0 - std::exp(-2.0 * pi * t)) * im;
}

double k_saddle_scaled(double t, double x) {
    // Valid for x > t. K = (1/2) e^{-(p + t beta)} J,
    // J = 2 int_0^inf e^{-p(cosh v - 1)} cos(t (sinh v - v)) dv.
    double p = std::sqrt((x - t) * (x + t));
    double beta = std::asin(std::min(1.0, t / x));
    double E = 0.5 * pi * t - p - t * beta;
    if (E < -740.0) return 0.0;
    double vmax = std::acosh(1.0 + 52.0 / p);
    auto J = quad::integrate(
        [&](double v) {
            double d = 2.0 * std::sinh(0.5 * v);
            double damp = -0.5 * p * d * d; // -p (cosh v - 1)
            if (damp < -60.0) return 0.0;
            return std::exp(damp) * std::cos(t * sinh_minus_t(v));
        },
        0.0, vmax, 1e-14, 1e-13, 2000);
    return std::exp(E) * J.value;
}

double transition_width(double t) { return std::max(2.5, 1.6 * std::cbrt(std::max(t, 0.0))); }

} // namespace

namespace detail {

CosSinPair mehler_sonine(double x, double mu, double tol) {
    bool use_dd = tol < 1e-11 && x * (std::abs(mu) / std::max(x, 1e-8) + 2.0) > 1e3;
    EngineOut e = osc_integral(x, std::abs(mu), Kern::Cosh, tol, use_dd);
    return {e.c, e.s, e.err};
}

double k_oscillatory_integral(double t, double x, double tol) {
    EngineOut e = osc_integral(x, std::abs(t), Kern::Sinh, tol, false);
    return e.c;
}

std::complex<double> j_series_shift(double y, int n, double x) {
    if (x <= 0.0) throw std::domain_error("j_series_shift: x must be positive");
    C nu(double(n), 2.0 * y);
    if (x > 52.0)
        throw std::domain_error("j_series_shift: x outside certified series window");
    C w0 = std::exp(-special::lgamma_complex(nu + 1.0)); // 1/Gamma(nu+1)
    CDD term{DD(w0.real()), DD(w0.imag())};
    CDD sum = term;
    DD x24 = dd::mul(dd::two_prod(x, x), 0.25);
    double max_term = cdd_abs(term);
    for (int k = 1; k < 700; ++k) {
        term = {dd::mul(term.re, x24), dd::mul(term.im, x24)};
        term = cdd_div_dd(term, DD(-double(k)));
        term = cdd_div_c(term, double(n + k), 2.0 * y);
        sum = cdd_add(sum, term);
        double at = cdd_abs(term);
        max_term = std::max(max_term, at);
        if (at < 1e-34 * cdd_abs(sum) + 1e-320) break;
    }
    double asum = cdd_abs(sum);
    if (asum == 0.0 || max_term / asum > 1e19)
        throw std::domain_error("j_series_shift: cancellation exceeds certified window");
    double L = std::log(0.5 * x);
    C front = std::exp(C(n * L, 2.0 * y * L)); // (x/2)^nu
    return front * C(sum.re.to_double(), sum.im.to_double());
}

} // namespace detail

double k_imag_scaled(double t, double x) {
    if (!(x > 0.0)) throw std::domain_error("k_imag_scaled: x must be positive");
    if (!std::isfinite(t) || !std::isfinite(x))
        throw std::domain_error("k_imag_scaled: arguments must be finite");
    t = std::abs(t);
    if (t >= 0.5 && x <= std::min(2.0 * std::sqrt(t + 1.0), 28.0))
        return k_series_scaled(t, x);
    if (x <= t + transition_width(t)) {
        double W = detail::k_oscillatory_integral(t, x, 1e-13);
        return 2.0 * W / (1.0 + std::exp(-pi * t));
    }
    return k_saddle_scaled(t, x);
}

KResult k_imag(double t, double x) {
    if (!(x > 0.0)) throw std::domain_error("k_imag: x must be positive");
    t = std::abs(t);
    double scaled = k_imag_scaled(t, x);
    double halfpi_t = 0.5 * pi * t;
    if (scaled == 0.0) {
        // Deep decay region: even the scaled value underflowed.
        return {0.0, x > t};
    }
    double lnval = std::log(std::abs(scaled)) - halfpi_t;
    if (lnval < -744.0) return {0.0, true};
    return {scaled * std::exp(-halfpi_t), false};
}

double k_scaled_envelope(double t, double u) {
    t = std::abs(t);
    if (u <= t + transition_width(t))
        return t >= 1.0 ? 4.0 : 4.0 + std::log(1.0 + 1.0 / u);
    double p = std::sqrt((u - t) * (u + t));
    double E = 0.5 * pi * t - p - t * std::asin(std::min(1.0, t / u));
    if (E < -740.0) return 0.0;
    return std::exp(E) * std::sqrt(0.5 * pi / p);
}

std::complex<double> j_imag_scaled(double y, double x) {
    if (!(x > 0.0)) throw std::domain_error("j_imag_scaled: x must be positive");
    if (y < 0.0) return std::conj(j_imag_scaled(-y, x));
    double mu = 2.0 * y;
    if (x <= std::min(2.0 * std::sqrt(mu + 1.0), 28.0)) {
        // Scaled power series.
        C lg = special::lgamma_complex(C(1.0, mu));
        double lncosh = pi * y + std::log1p(std::exp(-2.0 * pi * y)) - std::log(2.0);
        C w = std::exp(-lg - lncosh); // 1/(Gamma(1+2iy) cosh(pi y))
        C term = w, sum = w;
        double x24 = 0.25 * x * x;
        for (int k = 1; k < 400; ++k) {
            term *= -x24 / (double(k) * C(double(k), mu));
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        double L = std::log(0.5 * x);
        return std::exp(C(0.0, mu * L)) * sum;
    }
    auto cs = detail::mehler_sonine(x, mu, 1e-12);
    double th = std::tanh(pi * y);
    return (2.0 / pi) * C(cs.s, -th * cs.c);
}

std::complex<double> j_imag(double y, double x) {
    if (!(x > 0.0)) throw std::domain_error("j_imag: x must be positive");
    double a = pi * std::abs(y);
    if (a > 705.0)
        throw std::overflow_error("j_imag: cosh(pi y) overflows, use j_imag_scaled");
    return j_imag_scaled(y, x) * std::cosh(pi * y);
}

std::complex<double> j_imag_shifted(double y, double x) {
    if (!(x > 0.0 && x < 1.0))
        throw std::domain_error("j_imag_shifted: x must lie in (0,1)");
    return detail::j_series_shift(y, 2, x);
}

} // namespace maass::bessel
