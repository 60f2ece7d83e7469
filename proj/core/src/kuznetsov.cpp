#include "maass/kuznetsov.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "maass/arith.hpp"
#include "maass/chebyshev.hpp"
#include "maass/expsums.hpp"
#include "maass/quadrature.hpp"
#include "maass/special.hpp"

namespace maass::kuznetsov {

namespace {

using std::numbers::pi;
using C = std::complex<double>;

// tau_{it}(n) = sum_{ab = n} (a/b)^{it}, real.
double tau_it(double t, std::int64_t n) {
    double s = 0.0;
    for (std::uint64_t d : arith::divisors(static_cast<std::uint64_t>(n))) {
        double ratio = double(d) * double(d) / double(n);
        s += std::cos(t * std::log(ratio));
    }
    return s;
}

} // namespace

TraceCheckConfig::TraceCheckConfig(transforms::WindowKernel w_, std::int64_t n_,
                                   std::int64_t m_, double t_max_,
                                   std::int64_t c_max_, double tol_,
                                   double quad_tol_)
    : w(w_), n(n_), m(m_), t_max(t_max_), c_max(c_max_), tol(tol_),
      quad_tol(quad_tol_) {
    if (n < 1 || m < 1) throw std::invalid_argument("TraceCheckConfig: n, m >= 1");
    if (!(t_max >= w.T + 8.0 * w.G))
        throw std::invalid_argument(
            "TraceCheckConfig: t_max must be >= T + 8G for the Gaussian tail");
    if (!(tol > 0.0)) throw std::invalid_argument("TraceCheckConfig: tol > 0");
}

double diagonal_term(const transforms::WindowKernel& w, std::int64_t n,
                     std::int64_t m, double quad_tol) {
    if (n != m) return 0.0;
    auto r = quad::integrate(
        [&](double y) { return std::tanh(pi * y) * w(y) * y; }, -w.support_hi(),
        w.support_hi(), 0.1 * quad_tol * w.T * w.G, 0.1 * quad_tol, 2000);
    return r.value / (pi * pi);
}

double eisenstein_term(const transforms::WindowKernel& w, std::int64_t n,
                       std::int64_t m, double t_max, double quad_tol) {
    auto r = quad::integrate(
        [&](double t) {
            if (std::abs(t) < 1e-8) return 0.0; // 1/|zeta(1+2it)|^2 -> 0
            C z = special::zeta(C(1.0, 2.0 * t));
            double den = std::norm(z);
            return w(t) * tau_it(t, n) * tau_it(t, m) / den;
        },
        -t_max, t_max, 0.1 * quad_tol * w.T * w.G, 0.1 * quad_tol, 4000);
    return kEisensteinNorm / pi * r.value;
}

double kloosterman_term(const transforms::WindowKernel& w, std::int64_t n,
                        std::int64_t m, std::int64_t c_max,
                        double* tail_bound, double quad_tol) {
    transforms::BesselTransform bt(w, 0.1 * quad_tol);
    const double root = std::sqrt(double(n) * double(m));
    const double x_hi = 4.0 * pi * root;
    const double x_lo = x_hi / double(c_max);
    // Im g~ tabulated over the c-sum's argument range (log axis).
    ChebSeries img = ChebSeries::build(
        [&](double lx) { return bt.g_tilde(std::exp(lx)).imag(); },
        std::log(x_lo * 0.999), std::log(x_hi * 1.001), quad_tol, 12, 4096);
    KahanSum acc;
    for (std::int64_t c = 1; c <= c_max; ++c) {
        double S = expsums::kloosterman(n, m, c);
        if (S == 0.0) continue;
        double x = x_hi / double(c);
        acc.add(S / double(c) * img(std::log(x)));
    }
    if (tail_bound) {
        // |S(n,m,c)| <= (n,m,c)^{1/2} c^{1/2} tau(c) and the measured window
        // constant C with |Im g~(x)| <= C x^2 below x_lo give
        //   tail <= (|K|/pi) (n,m)^{1/2} C x_hi^2 sum_{c > c_max} tau(c) c^{-5/2},
        // the c-sum taken numerically to 5 c_max with a tau <= 2 sqrt(c) cap
        // for the rest.
        double Cwin = bt.lemma_smallx_constant(x_lo);
        double gnm = std::sqrt(double(arith::gcd64(n, m)));
        double s52 = 0.0;
        for (std::int64_t c = c_max + 1; c <= 5 * c_max; ++c)
            s52 += double(arith::divisor_count(c)) * std::pow(double(c), -2.5);
        s52 += 2.0 / (5.0 * double(c_max) - 1.0);
        *tail_bound = (std::abs(kKloostermanNorm) / pi) * gnm * Cwin * x_hi *
                      x_hi * s52;
    }
    return kKloostermanNorm / pi * acc.value();
}

double spectral_side(const TraceCheckConfig& cfg,
                     const forms::CoefficientCache& cache) {
    if (cache.records.empty() || cache.t_hi < cfg.t_max)
        throw std::runtime_error(
            "spectral_side: cache does not cover t <= t_max");
    KahanSum acc;
    for (const auto& f : cache.records) {
        if (f.t() > cfg.t_max) continue;
        if (!(f.rho1_sq() > 0.0))
            throw std::runtime_error("spectral_side: form lacks rho1_sq");
        double term = cfg.w(f.t()) * f.rho1_sq() * f.lambda(cfg.n) *
                      f.lambda(cfg.m);
        acc.add(term);
    }
    return acc.value() +
           eisenstein_term(cfg.w, cfg.n, cfg.m, cfg.t_max, cfg.quad_tol);
}

double geometric_side(const TraceCheckConfig& cfg) {
    double tail = 0.0;
    double kl = kloosterman_term(cfg.w, cfg.n, cfg.m, cfg.c_max, &tail,
                                 cfg.quad_tol);
    if (tail > cfg.tol / 10.0)
        throw std::runtime_error(
            "geometric_side: certified c-tail bound exceeds tol/10, raise "
            "c_max");
    return diagonal_term(cfg.w, cfg.n, cfg.m, cfg.quad_tol) + kl;
}

double trace_residual(const TraceCheckConfig& cfg,
                      const forms::CoefficientCache& cache) {
    double s = spectral_side(cfg, cache);
    double g = geometric_side(cfg);
    return std::abs(s - g) / std::max(std::abs(g), cfg.tol);
}

SideBreakdown trace_breakdown(const TraceCheckConfig& cfg,
                              const forms::CoefficientCache& cache) {
    SideBreakdown b;
    KahanSum acc;
    for (const auto& f : cache.records) {
        if (f.t() > cfg.t_max) continue;
        acc.add(cfg.w(f.t()) * f.rho1_sq() * f.lambda(cfg.n) * f.lambda(cfg.m));
    }
    b.cusp = acc.value();
    b.eisenstein = eisenstein_term(cfg.w, cfg.n, cfg.m, cfg.t_max, cfg.quad_tol);
    b.diagonal = diagonal_term(cfg.w, cfg.n, cfg.m, cfg.quad_tol);
    b.kloosterman = kloosterman_term(cfg.w, cfg.n, cfg.m, cfg.c_max,
                                     &b.c_tail_bound, cfg.quad_tol);
    return b;
}

} // namespace maass::kuznetsov
