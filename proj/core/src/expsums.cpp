#include "maass/expsums.hpp"

#include <cmath>
#include <functional>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "maass/arith.hpp"

namespace maass::expsums {

namespace {

using std::numbers::pi;
using C = std::complex<double>;
using arith::gcd64;

// Per-modulus tables: e_c(k) and modular inverses of units.
struct ModTables {
    std::int64_t c;
    std::vector<double> cosv, sinv;
    std::vector<std::int64_t> inv; // inv[x] for units, -1 otherwise

    explicit ModTables(std::int64_t c_) : c(c_), cosv(c_), sinv(c_), inv(c_, -1) {
        for (std::int64_t k = 0; k < c; ++k) {
            double th = 2.0 * pi * double(k) / double(c);
            cosv[k] = std::cos(th);
            sinv[k] = std::sin(th);
        }
        if (c == 1) {
            inv[0] = 0;
            return;
        }
        for (std::int64_t x = 0; x < c; ++x)
            if (gcd64(x, c) == 1) inv[x] = arith::inv_mod(x, c);
    }

    std::int64_t red(std::int64_t a) const {
        std::int64_t r = a % c;
        return r < 0 ? r + c : r;
    }
};

std::int64_t red_mod(std::int64_t a, std::int64_t c) {
    std::int64_t r = a % c;
    return r < 0 ? r + c : r;
}

// Enumerates (x, xbar, contribution exponent) rows of the completed-square
// reduction; shared by the float and cyclotomic evaluated paths.
template <class Fn>
void evaluated_rows(const TwistedSumParams& p, const ModTables& T, Fn&& emit) {
    std::int64_t c = p.c;
    if (c % 2 == 0 || gcd64(red_mod(p.gamma, c), c) != 1)
        throw std::domain_error(
            "twisted_sum_evaluated: requires gcd(c, 2 gamma) = 1; CRT-split first");
    std::int64_t g = red_mod(p.gamma, c);
    std::int64_t inv4g = arith::inv_mod(red_mod(4 * g, c), c);
    std::int64_t du = red_mod(p.d + p.u, c);
    std::int64_t dd = red_mod(p.d, c);
    std::int64_t u = red_mod(p.u, c), v = red_mod(p.v, c);
    for (std::int64_t x = (c == 1 ? 0 : 1); x < c; ++x) {
        if (T.inv[x] < 0 && c > 1) continue;
        std::int64_t xb = (c == 1) ? 0 : T.inv[x];
        if (red_mod(v * x - u, c) != 0) continue;
        // exponent of the non-Gauss factor: -(4 gamma)^{-1} x ((d+u) xbar + d)^2
        std::int64_t w = red_mod(du * xb + dd, c);
        std::int64_t expo = red_mod(-((inv4g * x) % c) % c * ((w * w) % c), c);
        std::int64_t gm = red_mod(g * x, c); // Gauss-sum multiplier gamma*x
        emit(gm, expo);
    }
}

// Integer polynomial division helpers for the cyclotomic reduction.
std::vector<long long> poly_divide_exact(std::vector<long long> num,
                                         const std::vector<long long>& den) {
    // num, den: coefficient vectors, lowest degree first; exact division.
    int dn = static_cast<int>(num.size()) - 1;
    int dd = static_cast<int>(den.size()) - 1;
    std::vector<long long> q(dn - dd + 1, 0);
    for (int k = dn - dd; k >= 0; --k) {
        long long coef = num[k + dd] / den[dd];
        q[k] = coef;
        if (coef != 0)
            for (int j = 0; j <= dd; ++j) num[k + j] -= coef * den[j];
    }
    return q;
}

const std::vector<long long>& cyclotomic_poly(std::int64_t n) {
    static std::vector<std::vector<long long>> cache(501);
    static std::mutex mtx;
    std::lock_guard<std::mutex> lk(mtx);
    auto& slot = cache[n];
    if (!slot.empty()) return slot;
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, computed recursively.
    std::function<std::vector<long long>(std::int64_t)> phi =
        [&](std::int64_t m) -> std::vector<long long> {
        if (!cache[m].empty()) return cache[m];
        std::vector<long long> num(m + 1, 0);
        num[0] = -1;
        num[m] = 1;
        for (std::int64_t d = 1; d < m; ++d) {
            if (m % d != 0) continue;
            num = poly_divide_exact(std::move(num), phi(d));
        }
        cache[m] = num;
        return num;
    };
    slot = phi(n);
    return slot;
}

std::vector<long long> reduce_mod_phi(const std::vector<long long>& buckets,
                                      std::int64_t c) {
    const auto& phi = cyclotomic_poly(c);
    std::vector<long long> r(buckets);
    int dphi = static_cast<int>(phi.size()) - 1;
    for (int k = static_cast<int>(r.size()) - 1; k >= dphi; --k) {
        long long coef = r[k]; // phi is monic
        if (coef == 0) continue;
        for (int j = 0; j <= dphi; ++j) r[k - dphi + j] -= coef * phi[j];
    }
    r.resize(dphi);
    return r;
}

} // namespace

TwistedSumParams::TwistedSumParams(std::int64_t c_, std::int64_t d_,
                                   std::int64_t u_, std::int64_t v_,
                                   std::int64_t gamma_)
    : c(c_), d(d_), gamma(gamma_) {
    if (c < 1) throw std::domain_error("TwistedSumParams: c must be >= 1");
    u = arith::balanced_mod(u_, c);
    v = arith::balanced_mod(v_, c);
}

double kloosterman(std::int64_t n, std::int64_t m, std::int64_t c) {
    if (c < 1) throw std::domain_error("kloosterman: c must be >= 1");
    if (c == 1) return 1.0;
    ModTables T(c);
    double s = 0.0;
    std::int64_t nr = red_mod(n, c), mr = red_mod(m, c);
    for (std::int64_t x = 1; x < c; ++x) {
        if (T.inv[x] < 0) continue;
        s += T.cosv[T.red(nr * x + mr * T.inv[x])];
    }
    return s;
}

double weil_bound(std::int64_t n, std::int64_t m, std::int64_t c) {
    std::int64_t g = gcd64(gcd64(n, m), c);
    return std::sqrt(double(g)) * std::sqrt(double(c)) *
           double(arith::divisor_count(c));
}

std::complex<double> gauss_sum(std::int64_t a, std::int64_t b, std::int64_t c) {
    if (c < 1) throw std::domain_error("gauss_sum: c must be >= 1");
    ModTables T(c);
    double re = 0.0, im = 0.0;
    std::int64_t ar = red_mod(a, c), br = red_mod(b, c);
    for (std::int64_t x = 0; x < c; ++x) {
        std::int64_t idx = T.red(ar * x % c * x + br * x);
        re += T.cosv[idx];
        im += T.sinv[idx];
    }
    return {re, im};
}

std::complex<double> twisted_sum_direct(const TwistedSumParams& p) {
    if (p.c > 5000)
        throw std::domain_error("twisted_sum_direct: oracle scale is c <= 5000");
    std::int64_t c = p.c;
    if (c == 1) return {1.0, 0.0};
    ModTables T(c);
    double re = 0.0, im = 0.0;
    std::int64_t g = red_mod(p.gamma, c), d = red_mod(p.d, c);
    std::int64_t du = red_mod(p.d + p.u, c), dv = red_mod(p.d + p.v, c);
    for (std::int64_t a = 0; a < c; ++a) {
        std::int64_t na = T.red(a * ((g * a + d) % c));
        for (std::int64_t b = 0; b < c; ++b) {
            std::int64_t nb = T.red(b * ((g * b + d) % c));
            std::int64_t tw = T.red(2 * g % c * a % c * b + du * a + dv * b);
            // inner Kloosterman S(na, nb, c)
            double kl = 0.0;
            for (std::int64_t x = 1; x < c; ++x) {
                if (T.inv[x] < 0) continue;
                kl += T.cosv[T.red(na * x + nb * T.inv[x])];
            }
            re += kl * T.cosv[tw];
            im += kl * T.sinv[tw];
        }
    }
    return {re, im};
}

std::complex<double> twisted_sum_evaluated(const TwistedSumParams& p) {
    std::int64_t c = p.c;
    if (c == 1) return {1.0, 0.0};
    ModTables T(c);
    double re = 0.0, im = 0.0;
    evaluated_rows(p, T, [&](std::int64_t gm, std::int64_t expo) {
        // g(gm; c) * e_c(expo)
        double gre = 0.0, gim = 0.0;
        for (std::int64_t a2 = 0; a2 < c; ++a2) {
            std::int64_t idx = T.red(gm * a2 % c * a2);
            gre += T.cosv[idx];
            gim += T.sinv[idx];
        }
        double ce = T.cosv[expo], se = T.sinv[expo];
        re += gre * ce - gim * se;
        im += gre * se + gim * ce;
    });
    return {re * double(c), im * double(c)};
}

std::pair<TwistedSumParams, TwistedSumParams> crt_split(const TwistedSumParams& p) {
    std::int64_t c2 = 1, c1 = p.c;
    while (c1 % 2 == 0) {
        c1 /= 2;
        c2 *= 2;
    }
    TwistedSumParams odd(c1, p.d, p.u, p.v, p.gamma * c2);
    TwistedSumParams even(c2, p.d, p.u, p.v, p.gamma * c1);
    return {odd, even};
}

Cyclotomic Cyclotomic::kloosterman(std::int64_t n, std::int64_t m, std::int64_t c) {
    if (c < 1 || c > 500)
        throw std::domain_error("Cyclotomic: supported range is 1 <= c <= 500");
    Cyclotomic out(c);
    if (c == 1) {
        out.buckets_[0] = 1;
        return out;
    }
    ModTables T(c);
    std::int64_t nr = red_mod(n, c), mr = red_mod(m, c);
    for (std::int64_t x = 1; x < c; ++x) {
        if (T.inv[x] < 0) continue;
        out.buckets_[T.red(nr * x + mr * T.inv[x])] += 1;
    }
    return out;
}

Cyclotomic Cyclotomic::twisted_direct(const TwistedSumParams& p) {
    std::int64_t c = p.c;
    if (c < 1 || c > 500)
        throw std::domain_error("Cyclotomic: supported range is 1 <= c <= 500");
    Cyclotomic out(c);
    if (c == 1) {
        out.buckets_[0] = 1;
        return out;
    }
    ModTables T(c);
    std::int64_t g = red_mod(p.gamma, c), d = red_mod(p.d, c);
    std::int64_t du = red_mod(p.d + p.u, c), dv = red_mod(p.d + p.v, c);
    for (std::int64_t a = 0; a < c; ++a) {
        std::int64_t na = T.red(a * ((g * a + d) % c));
        for (std::int64_t b = 0; b < c; ++b) {
            std::int64_t nb = T.red(b * ((g * b + d) % c));
            std::int64_t tw = T.red(2 * g % c * a % c * b + du * a + dv * b);
            for (std::int64_t x = 1; x < c; ++x) {
                if (T.inv[x] < 0) continue;
                out.buckets_[T.red(na * x + nb * T.inv[x] + tw)] += 1;
            }
        }
    }
    return out;
}

Cyclotomic Cyclotomic::twisted_evaluated(const TwistedSumParams& p) {
    std::int64_t c = p.c;
    if (c < 1 || c > 500)
        throw std::domain_error("Cyclotomic: supported range is 1 <= c <= 500");
    Cyclotomic out(c);
    if (c == 1) {
        out.buckets_[0] = 1;
        return out;
    }
    ModTables T(c);
    evaluated_rows(p, T, [&](std::int64_t gm, std::int64_t expo) {
        for (std::int64_t a2 = 0; a2 < c; ++a2)
            out.buckets_[T.red(gm * a2 % c * a2 + expo)] += c;
    });
    return out;
}

bool Cyclotomic::is_zero() const {
    auto r = reduce_mod_phi(buckets_, c_);
    for (long long v : r)
        if (v != 0) return false;
    return true;
}

bool Cyclotomic::equals(const Cyclotomic& other) const {
    if (c_ != other.c_) return false;
    std::vector<long long> diff(buckets_);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= other.buckets_[i];
    auto r = reduce_mod_phi(diff, c_);
    for (long long v : r)
        if (v != 0) return false;
    return true;
}

std::complex<double> Cyclotomic::value() const {
    double re = 0.0, im = 0.0;
    for (std::int64_t k = 0; k < c_; ++k) {
        double th = 2.0 * pi * double(k) / double(c_);
        re += double(buckets_[k]) * std::cos(th);
        im += double(buckets_[k]) * std::sin(th);
    }
    return {re, im};
}

} // namespace maass::expsums
