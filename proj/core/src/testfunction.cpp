#include "maass/testfunction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "maass/quadrature.hpp"

namespace maass {

namespace {

constexpr int kMaxOrder = 24;

// psi and derivatives 0..order at x for a single unit bump on (a,b).
void bump_derivs(double a, double b, double x, int order, double* out) {
    for (int i = 0; i <= order; ++i) out[i] = 0.0;
    if (x <= a || x >= b) return;
    double q = (x - a) * (b - x);
    double e = -1.0 / q;
    if (e < -700.0) return;
    out[0] = std::exp(e);
    if (order == 0) return;
    // g = -1/((x-a)(b-x)) = -(1/(b-a)) [1/(x-a) + 1/(b-x)]
    // g^{(k)} = -(1/(b-a)) [(-1)^k k!/(x-a)^{k+1} + k!/(b-x)^{k+1}]
    double gd[kMaxOrder + 2];
    double inv_ba = 1.0 / (b - a);
    double pa = 1.0 / (x - a), pb = 1.0 / (b - x);
    double fak = 1.0, ppa = pa, ppb = pb;
    for (int k = 1; k <= order; ++k) {
        fak *= k;
        ppa *= pa;
        ppb *= pb;
        double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        gd[k] = -inv_ba * fak * (sgn * ppa + ppb);
    }
    // Binomial recurrence psi^{(n+1)} = sum_k C(n,k) g^{(k+1)} psi^{(n-k)}.
    double binom[kMaxOrder + 1][kMaxOrder + 1];
    for (int n = 0; n <= order; ++n) {
        binom[n][0] = 1.0;
        for (int k = 1; k <= n; ++k)
            binom[n][k] = binom[n - 1][k - 1] + (k <= n - 1 ? binom[n - 1][k] : 0.0);
    }
    for (int n = 0; n < order; ++n) {
        double acc = 0.0;
        for (int k = 0; k <= n; ++k) acc += binom[n][k] * gd[k + 1] * out[n - k];
        out[n + 1] = acc;
    }
}

} // namespace

TestFunction::TestFunction(double a, double b, double weight) {
    if (!(0.0 <= a && a < b))
        throw std::invalid_argument("TestFunction: need 0 <= a < b");
    bumps_.push_back({a, b, weight});
}

double TestFunction::support_lo() const {
    double lo = bumps_[0].a;
    for (const auto& bp : bumps_) lo = std::min(lo, bp.a);
    return lo;
}

double TestFunction::support_hi() const {
    double hi = bumps_[0].b;
    for (const auto& bp : bumps_) hi = std::max(hi, bp.b);
    return hi;
}

double TestFunction::operator()(double x) const {
    double v = 0.0;
    double d[1];
    for (const auto& bp : bumps_) {
        bump_derivs(bp.a, bp.b, x, 0, d);
        v += bp.w * d[0];
    }
    return v;
}

double TestFunction::derivative(int order, double x) const {
    if (order < 0 || order > kMaxOrder)
        throw std::invalid_argument("TestFunction::derivative: order out of range");
    double d[kMaxOrder + 1];
    double v = 0.0;
    for (const auto& bp : bumps_) {
        bump_derivs(bp.a, bp.b, x, order, d);
        v += bp.w * d[order];
    }
    return v;
}

std::complex<double> TestFunction::mellin(std::complex<double> s) const {
    std::complex<double> acc = 0.0;
    for (const auto& bp : bumps_) {
        auto r = quad::integrate_c(
            [&](double y) {
                double d[1];
                bump_derivs(bp.a, bp.b, y, 0, d);
                return d[0] * std::exp((s - 1.0) * std::log(y));
            },
            bp.a, bp.b, 1e-13, 1e-12, 3000);
        acc += bp.w * r.value;
    }
    return acc;
}

double TestFunction::sobolev_norm(int k) const {
    auto sup_scan = [&](int points) {
        double lo = support_lo(), hi = support_hi();
        double best = 0.0;
        for (int j = 0; j <= k; ++j) {
            for (int i = 0; i <= points; ++i) {
                double x = lo + (hi - lo) * i / points;
                best = std::max(best, std::abs(derivative(j, x)));
            }
        }
        return best;
    };
    double coarse = sup_scan(10000);
    double fine = sup_scan(40000);
    return std::max(coarse, fine);
}

double TestFunction::integral() const {
    double acc = 0.0;
    for (const auto& bp : bumps_) {
        auto r = quad::integrate(
            [&](double y) {
                double d[1];
                bump_derivs(bp.a, bp.b, y, 0, d);
                return d[0];
            },
            bp.a, bp.b, 1e-14, 1e-13, 2000);
        acc += bp.w * r.value;
    }
    return acc;
}

TestFunction TestFunction::operator+(const TestFunction& other) const {
    TestFunction out = *this;
    out.bumps_.insert(out.bumps_.end(), other.bumps_.begin(), other.bumps_.end());
    return out;
}

TestFunction TestFunction::operator*(double scale) const {
    TestFunction out = *this;
    for (auto& bp : out.bumps_) bp.w *= scale;
    return out;
}

} // namespace maass
