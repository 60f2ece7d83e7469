#include "maass/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace maass::quad {

namespace {

struct NodeSet {
    std::vector<double> x;
    std::vector<double> w;
};

NodeSet make_gl(int n) {
    NodeSet ns;
    ns.x.resize(n);
    ns.w.resize(n);
    for (int i = 0; i < n / 2 + n % 2; ++i) {
        // Initial guess (Chebyshev-like), then Newton on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        ns.x[i] = -x;
        ns.w[i] = w;
        ns.x[n - 1 - i] = x;
        ns.w[n - 1 - i] = w;
    }
    return ns;
}

const NodeSet& cached_gl(int n) {
    static std::map<int, NodeSet> cache;
    static std::mutex mtx;
    std::lock_guard lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_gl(n)).first;
    return it->second;
}

template <class T>
T panel(const std::function<T(double)>& f, double a, double b, int n) {
    const NodeSet& ns = cached_gl(n);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    T acc{};
    for (int i = 0; i < n; ++i) acc += T(ns.w[i] * half) * f(mid + half * ns.x[i]);
    return acc;
}

template <class T>
struct Segment {
    double a, b;
    T value;
    double err;
};

template <class T>
Segment<T> eval_segment(const std::function<T(double)>& f, double a, double b) {
    T v10 = panel<T>(f, a, b, 10);
    T v20 = panel<T>(f, a, b, 20);
    return {a, b, v20, std::abs(v20 - v10)};
}

template <class T>
Result<T> adaptive(const std::function<T(double)>& f, double a, double b,
                   double abs_tol, double rel_tol, int max_panels) {
    Result<T> res;
    if (!(b > a)) {
        res.converged = true;
        return res;
    }
    std::vector<Segment<T>> segs;
    segs.push_back(eval_segment<T>(f, a, b));
    while (true) {
        T total{};
        double err = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            total += segs[i].value;
            err += segs[i].err;
            if (segs[i].err > segs[worst].err) worst = i;
        }
        double tol = std::max(abs_tol, rel_tol * std::abs(total));
        res.value = total;
        res.error = err;
        res.panels = static_cast<int>(segs.size());
        res.worst_lo = segs[worst].a;
        res.worst_hi = segs[worst].b;
        if (err <= tol) {
            res.converged = true;
            return res;
        }
        if (static_cast<int>(segs.size()) >= max_panels) {
            res.converged = false;
            return res;
        }
        Segment<T> s = segs[worst];
        double m = 0.5 * (s.a + s.b);
        segs[worst] = eval_segment<T>(f, s.a, m);
        segs.push_back(eval_segment<T>(f, m, s.b));
    }
}

} // namespace

std::span<const double> gl_nodes(int n) { return cached_gl(n).x; }
std::span<const double> gl_weights(int n) { return cached_gl(n).w; }

Result<double> integrate(const std::function<double(double)>& f, double a,
                         double b, double abs_tol, double rel_tol,
                         int max_panels) {
    return adaptive<double>(f, a, b, abs_tol, rel_tol, max_panels);
}

Result<std::complex<double>> integrate_c(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double abs_tol, double rel_tol, int max_panels) {
    return adaptive<std::complex<double>>(f, a, b, abs_tol, rel_tol,
                                          max_panels);
}

double gl_panel(const std::function<double(double)>& f, double a, double b,
                int n) {
    return panel<double>(f, a, b, n);
}

std::complex<double> gl_panel_c(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    int n) {
    return panel<std::complex<double>>(f, a, b, n);
}

} // namespace maass::quad
