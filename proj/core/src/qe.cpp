#include "maass/qe.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "maass/arith.hpp"

namespace maass::qe {

namespace {

using std::numbers::pi;

void require_coeffs(const forms::MaassForm& f, std::int64_t m, double X,
                    const TestFunction& psi) {
    std::int64_t n_hi =
        static_cast<std::int64_t>(std::floor(X * psi.support_hi() / pi));
    if (n_hi + m > f.n_coeff())
        throw std::length_error(
            "qe_sum: insufficient coefficients, need N_coeff >= " +
            std::to_string(n_hi + m));
}

} // namespace

QEReport qe_sum(const forms::MaassForm& f, std::int64_t m, double X,
                const TestFunction& psi) {
    if (m < 0) throw std::invalid_argument("qe_sum: m >= 0");
    if (!(X > 0.0)) throw std::invalid_argument("qe_sum: X > 0");
    if (!(f.rho1_sq() > 0.0))
        throw std::logic_error("qe_sum: form lacks rho1_sq");
    require_coeffs(f, m, X, psi);
    QEReport rep;
    rep.m = m;
    rep.X = X;
    std::int64_t n_lo = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::floor(X * psi.support_lo() / pi)));
    std::int64_t n_hi =
        static_cast<std::int64_t>(std::ceil(X * psi.support_hi() / pi));
    KahanSum acc;
    for (std::int64_t n = n_lo; n <= n_hi; ++n) {
        double p = psi(pi * double(n) / X);
        if (p == 0.0) continue;
        acc.add(f.lambda(n) * f.lambda(n + m) * p);
    }
    double sum = f.rho1_sq() * acc.value();
    if (m == 0) {
        sum *= 2.0; // the n < 0 mirror
        rep.main_term = mellin_main_term(psi, X);
    }
    rep.value = sum;
    rep.discrepancy = std::abs(rep.value - rep.main_term) / X;
    return rep;
}

double qe_sum_factorized(const forms::MaassForm& f, std::int64_t m, double X,
                         const TestFunction& psi) {
    if (m < 1) throw std::invalid_argument("qe_sum_factorized: m >= 1");
    if (!(f.rho1_sq() > 0.0))
        throw std::logic_error("qe_sum_factorized: form lacks rho1_sq");
    require_coeffs(f, m, X, psi);
    KahanSum acc;
    for (std::uint64_t d : arith::divisors(static_cast<std::uint64_t>(m))) {
        double scale = pi * double(m) / (double(d) * X);
        std::int64_t k_hi =
            static_cast<std::int64_t>(std::ceil(psi.support_hi() / scale));
        for (std::int64_t k = 1; k <= k_hi; ++k) {
            double p = psi(scale * double(k));
            if (p == 0.0) continue;
            acc.add(f.lambda_extended(k * (k + static_cast<std::int64_t>(d))) *
                    p);
        }
    }
    return f.rho1_sq() * acc.value();
}

WindowedAverage windowed_average(const forms::CoefficientCache& cache,
                                 const transforms::WindowKernel& w,
                                 std::int64_t m, double X,
                                 const TestFunction& psi, double eps, int A) {
    WindowedAverage out;
    bool any_cover = cache.t_lo <= w.T - w.G && cache.t_hi >= w.T + w.G;
    if (!any_cover)
        throw std::runtime_error(
            "windowed_average: cache does not cover [T-G, T+G]");
    KahanSum acc;
    for (const auto& f : cache.records) {
        if (std::abs(f.t() - w.T) >= w.G) continue;
        QEReport r = qe_sum(f, m, X, psi);
        double centered = r.value - r.main_term;
        acc.add(centered * centered);
        ++out.forms_used;
    }
    out.sum_sq = acc.value();
    double norm = psi.sobolev_norm(A);
    out.normalizer = X * w.G * std::pow(w.T, 1.0 + eps) * norm * norm;
    out.ratio = out.sum_sq / out.normalizer;
    return out;
}

double mellin_main_term(const TestFunction& psi, double X) {
    // Main term of sum_{n != 0} rho(n)^2 psi(pi |n|/X): the Mellin pole at
    // s = 1 of zeta(s) L(s, sym^2)/zeta(2s) gives
    //   2 (X/pi) rho(1)^2 L(1, sym^2) / zeta(2) * int psi,
    // and with the trace-normalized rho(1)^2 L = 2 this is (24/pi^3) X int.
    return 24.0 / (pi * pi * pi) * X * psi.integral();
}

std::complex<double> mellin_value(const TestFunction& psi,
                                  std::complex<double> s) {
    if (s.real() < 0.4 || s.real() > 2.1)
        throw std::domain_error("mellin_value: diagnostic line is Re s in [1/2, 2]");
    return psi.mellin(s);
}

QEReport corollary_discrepancy(const forms::MaassForm& f, std::int64_t m,
                               const TestFunction& psi) {
    return qe_sum(f, m, f.t(), psi);
}

} // namespace maass::qe
