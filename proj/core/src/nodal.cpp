#include "maass/nodal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "maass/quadrature.hpp"

namespace maass::nodal {

GeodesicSegment::GeodesicSegment(double lo, double hi) : y_min(lo), y_max(hi) {
    if (!(lo < hi)) throw std::invalid_argument("GeodesicSegment: y_min < y_max");
    if (!(lo >= 0.1))
        throw std::invalid_argument("GeodesicSegment: evaluation floor y >= 0.1");
}

double GeodesicSegment::length() const { return std::log(y_max / y_min); }

SampledTrace sample_on_axis(const forms::MaassForm& f,
                            const GeodesicSegment& seg, double density) {
    if (density < 10.0)
        throw std::invalid_argument("sample_on_axis: density >= 10");
    SampledTrace tr;
    double dy = seg.y_min / (density * std::max(f.t(), 1.0));
    int n = static_cast<int>(std::ceil((seg.y_max - seg.y_min) / dy)) + 1;
    tr.y.resize(n);
    tr.phi.resize(n);
    if (f.parity() == forms::Parity::Odd) {
        for (int i = 0; i < n; ++i)
            tr.y[i] = seg.y_min + (seg.y_max - seg.y_min) * i / (n - 1);
        tr.zero_trace = true;
        return tr; // phi(iy) = 0 identically
    }
    double sup = 0.0;
    for (int i = 0; i < n; ++i) {
        double y = seg.y_min + (seg.y_max - seg.y_min) * i / (n - 1);
        tr.y[i] = y;
        tr.phi[i] = f.evaluate({0.0, y});
        sup = std::max(sup, std::abs(tr.phi[i]));
    }
    double rho1 = 2.0 * std::sqrt(f.rho1_sq());
    tr.point_err =
        f.err() * std::max(sup, 1e-3) + rho1 * f.truncation_bound(seg.y_min);
    return tr;
}

int count_sign_changes(const SampledTrace& trace) {
    if (trace.zero_trace) return 0;
    double thresh = 10.0 * trace.point_err;
    int count = 0;
    double last_sign = 0.0;
    int pending_small = 0;
    for (std::size_t i = 0; i < trace.phi.size(); ++i) {
        double v = trace.phi[i];
        if (std::abs(v) <= thresh) {
            ++pending_small;
            if (pending_small > 6)
                throw std::runtime_error(
                    "count_sign_changes: unresolved crossing (too many "
                    "consecutive samples below the certified threshold); "
                    "refine the grid");
            continue;
        }
        double s = v > 0.0 ? 1.0 : -1.0;
        if (last_sign != 0.0 && s != last_sign) ++count;
        last_sign = s;
        pending_small = 0;
    }
    return count;
}

int sign_changes_certified(const forms::MaassForm& f,
                           const GeodesicSegment& seg, double density) {
    int c1 = count_sign_changes(sample_on_axis(f, seg, density));
    int c2 = count_sign_changes(sample_on_axis(f, seg, 2.0 * density));
    if (c1 != c2)
        throw std::runtime_error(
            "sign_changes_certified: count changed under refinement");
    return c2;
}

namespace {

// Zero crossings of the sampled trace, as panel breakpoints for |phi|.
std::vector<double> crossing_points(const SampledTrace& tr) {
    std::vector<double> xs;
    for (std::size_t i = 1; i < tr.phi.size(); ++i) {
        if (tr.phi[i - 1] == 0.0) continue;
        if ((tr.phi[i] > 0.0) != (tr.phi[i - 1] > 0.0)) {
            double f0 = tr.phi[i - 1], f1 = tr.phi[i];
            double y0 = tr.y[i - 1], y1 = tr.y[i];
            xs.push_back(y0 + (y1 - y0) * (-f0) / (f1 - f0));
        }
    }
    return xs;
}

} // namespace

double m1_sup_fn(const std::function<double(double)>& f,
                 const GeodesicSegment& seg, int cells) {
    // Running integral of f(y)/y on a dense grid, GL4 per cell.
    auto n4 = quad::gl_nodes(4);
    auto w4 = quad::gl_weights(4);
    double I = 0.0, imax = 0.0, imin = 0.0;
    for (int i = 1; i <= cells; ++i) {
        double a = seg.y_min + (seg.y_max - seg.y_min) * (i - 1) / cells;
        double b = seg.y_min + (seg.y_max - seg.y_min) * i / cells;
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double v = 0.0;
        for (int k = 0; k < 4; ++k) {
            double y = mid + half * n4[k];
            v += w4[k] * half * f(y) / y;
        }
        I += v;
        imax = std::max(imax, I);
        imin = std::min(imin, I);
    }
    return imax - imin;
}

double m1_sup(const forms::MaassForm& f, const GeodesicSegment& seg) {
    if (f.parity() == forms::Parity::Odd) return 0.0;
    double dy = seg.y_min / (10.0 * std::max(f.t(), 1.0));
    int cells = static_cast<int>(std::ceil((seg.y_max - seg.y_min) / dy));
    return m1_sup_fn([&](double y) { return f.evaluate({0.0, y}); }, seg,
                     cells);
}

double restriction_norm(const forms::MaassForm& f, const GeodesicSegment& seg) {
    if (f.parity() == forms::Parity::Odd) return 0.0;
    auto r = quad::integrate(
        [&](double y) {
            double v = f.evaluate({0.0, y});
            return v * v / y;
        },
        seg.y_min, seg.y_max, 1e-9, 1e-6, 2000);
    return r.value;
}

double l1_norm(const forms::MaassForm& f, const GeodesicSegment& seg) {
    if (f.parity() == forms::Parity::Odd) return 0.0;
    SampledTrace tr = sample_on_axis(f, seg, 10.0);
    auto xs = crossing_points(tr);
    xs.insert(xs.begin(), seg.y_min);
    xs.push_back(seg.y_max);
    double acc = 0.0;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        auto r = quad::integrate(
            [&](double y) { return f.evaluate({0.0, y}) / y; }, xs[i - 1],
            xs[i], 1e-10, 1e-8, 600);
        acc += std::abs(r.value);
    }
    return acc;
}

double l1_norm_fn(const std::function<double(double)>& f,
                  const GeodesicSegment& seg, int cells) {
    auto n4 = quad::gl_nodes(4);
    auto w4 = quad::gl_weights(4);
    double acc = 0.0;
    for (int i = 1; i <= cells; ++i) {
        double a = seg.y_min + (seg.y_max - seg.y_min) * (i - 1) / cells;
        double b = seg.y_min + (seg.y_max - seg.y_min) * i / cells;
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int k = 0; k < 4; ++k) {
            double y = mid + half * n4[k];
            acc += w4[k] * half * std::abs(f(y)) / y;
        }
    }
    return acc;
}

NodalReport chain_inequality_report(const forms::MaassForm& f,
                                    const GeodesicSegment& seg,
                                    double density) {
    NodalReport rep;
    rep.t_ref_onetwelfth = std::pow(f.t(), 1.0 / 12.0);
    rep.t_ref_eps = std::pow(f.t(), 0.1 / 4.0);
    if (f.parity() == forms::Parity::Odd) {
        rep.zero_trace = true;
        return rep;
    }
    SampledTrace tr = sample_on_axis(f, seg, density);
    rep.sign_changes = sign_changes_certified(f, seg, density);
    rep.m1 = m1_sup(f, seg);
    rep.l1 = l1_norm(f, seg);
    rep.l2_restriction = restriction_norm(f, seg);
    rep.sup_norm = 0.0;
    for (double v : tr.phi) rep.sup_norm = std::max(rep.sup_norm, std::abs(v));
    rep.lower_bound_ratio =
        rep.l1 > 0.0 ? rep.sign_changes * rep.m1 / rep.l1 : 0.0;
    return rep;
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 3)
        throw std::invalid_argument("spearman: need matched samples, n >= 3");
    auto ranks = [](const std::vector<double>& v) {
        std::vector<std::size_t> idx(v.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
        std::vector<double> r(v.size());
        for (std::size_t k = 0; k < idx.size(); ++k) r[idx[k]] = double(k);
        return r;
    };
    auto ra = ranks(a), rb = ranks(b);
    double n = double(a.size());
    double ma = (n - 1) / 2.0;
    double num = 0.0, da = 0.0, db = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (ra[i] - ma) * (rb[i] - ma);
        da += (ra[i] - ma) * (ra[i] - ma);
        db += (rb[i] - ma) * (rb[i] - ma);
    }
    return num / std::sqrt(da * db);
}

} // namespace maass::nodal
