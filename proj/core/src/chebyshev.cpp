#include "maass/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace maass {

namespace {

std::vector<double> cheb_coeffs(const std::function<double(double)>& f,
                                double a, double b, int n) {
    // Chebyshev-Gauss nodes, first-kind expansion.
    std::vector<double> fv(n + 1), c(n + 1, 0.0);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int k = 0; k <= n; ++k) {
        double theta = std::numbers::pi * (k + 0.5) / (n + 1);
        fv[k] = f(mid + half * std::cos(theta));
    }
    for (int j = 0; j <= n; ++j) {
        double s = 0.0;
        for (int k = 0; k <= n; ++k)
            s += fv[k] * std::cos(std::numbers::pi * j * (k + 0.5) / (n + 1));
        c[j] = 2.0 * s / (n + 1);
    }
    c[0] *= 0.5;
    return c;
}

double tail_estimate(const std::vector<double>& c) {
    int n = static_cast<int>(c.size());
    double t = 0.0;
    for (int j = std::max(0, n - 3); j < n; ++j) t = std::max(t, std::abs(c[j]));
    return t;
}

} // namespace

ChebSeries ChebSeries::build(const std::function<double(double)>& f, double a,
                             double b, double tol, int degree,
                             int max_panels) {
    if (!(b > a)) throw std::invalid_argument("ChebSeries: empty interval");
    ChebSeries s;
    s.lo_ = a;
    s.hi_ = b;
    std::vector<std::pair<double, double>> todo{{a, b}};
    while (!todo.empty()) {
        auto [pa, pb] = todo.back();
        todo.pop_back();
        auto c = cheb_coeffs(f, pa, pb, degree);
        double tail = tail_estimate(c);
        if (tail > tol && static_cast<int>(s.panels_.size()) + static_cast<int>(todo.size()) + 2 <= max_panels &&
            pb - pa > 1e-12 * (b - a)) {
            double m = 0.5 * (pa + pb);
            todo.push_back({pa, m});
            todo.push_back({m, pb});
            continue;
        }
        s.max_tail_ = std::max(s.max_tail_, tail);
        s.panels_.push_back({pa, pb, std::move(c)});
    }
    std::sort(s.panels_.begin(), s.panels_.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    return s;
}

double ChebSeries::operator()(double x) const {
    if (x < lo_ || x > hi_)
        throw std::domain_error("ChebSeries: argument outside table range");
    // Binary search for the panel containing x.
    std::size_t idx =
        std::upper_bound(panels_.begin(), panels_.end(), x,
                         [](double v, const Panel& p) { return v < p.a; }) -
        panels_.begin();
    if (idx > 0) --idx;
    const Panel& p = panels_[idx];
    double u = (2.0 * x - p.a - p.b) / (p.b - p.a);
    // Clenshaw.
    double b1 = 0.0, b2 = 0.0;
    for (int j = static_cast<int>(p.coef.size()) - 1; j >= 1; --j) {
        double t = 2.0 * u * b1 - b2 + p.coef[j];
        b2 = b1;
        b1 = t;
    }
    return u * b1 - b2 + p.coef[0];
}

} // namespace maass
