#include "maass/forms.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>

#include "maass/arith.hpp"
#include "maass/bessel.hpp"
#include "maass/chebyshev.hpp"
#include "maass/parallel.hpp"

namespace maass::forms {

namespace {

using std::numbers::pi;
using C = std::complex<double>;

double sqrt_cosh_scale(double t) {
    // sqrt(cosh(pi t)) e^{-pi t / 2}
    return std::sqrt(0.5 * (1.0 + std::exp(-2.0 * pi * t)));
}

// sqrt(cosh(pi t)) K_{it}(u), the working kernel of the Fourier expansion.
double kappa_direct(double t, double u) {
    return bessel::k_imag_scaled(t, u) * sqrt_cosh_scale(t);
}

double series_cutoff(double t) {
    return t + 12.0 * std::cbrt(std::max(t, 1.0)) + 5.0;
}

int truncation_length(double t, double y) {
    return static_cast<int>(std::ceil(series_cutoff(t) / (2.0 * pi * y)));
}

// Reduction of z into the standard fundamental domain of PSL(2, Z).
C pullback(C z) {
    for (int it = 0; it < 200; ++it) {
        double x = z.real() - std::round(z.real());
        z = {x, z.imag()};
        double n2 = std::norm(z);
        if (n2 >= 1.0 - 1e-15) break;
        z = {-z.real() / n2, z.imag() / n2}; // z -> -1/z
    }
    return z;
}

double trig(Parity p, double arg) {
    return p == Parity::Even ? std::cos(arg) : std::sin(arg);
}

// Collocation core system at one (t, y0): solves for lambda(2..M*) with
// lambda(1) = 1 from the implicit automorphy conditions.
struct CoreSolve {
    std::vector<double> a; // a[1..Mstar], a[1] = 1
    bool ok = false;
};

struct Workspace {
    // pullback data reused across t at fixed (y0, Q)
    double y0 = 0.0;
    int Q = 0;
    std::vector<double> xj, xs, ys; // collocation x_j, pulled-back x*, y*
    void prepare(double y0_, int Q_) {
        if (y0 == y0_ && Q == Q_) return;
        y0 = y0_;
        Q = Q_;
        xj.resize(Q);
        xs.resize(Q);
        ys.resize(Q);
        for (int j = 0; j < Q; ++j) {
            xj[j] = (j + 0.5) / (2.0 * Q);
            C zs = pullback(C(xj[j], y0));
            xs[j] = zs.real();
            ys[j] = zs.imag();
        }
    }
};

CoreSolve solve_core(double t, Parity parity, Workspace& ws, double y0) {
    const int Mstar =
        std::max(4, truncation_length(t, 0.8660254037844386));
    const int Q = Mstar + 8;
    ws.prepare(y0, Q);

    // P[k][n] = (2/Q) sum_j sqrt(y*_j) kappa(2 pi n y*_j) trig(2 pi n x*_j)
    //                        * trig(2 pi k x_j),  1 <= k, n <= Mstar
    std::vector<std::vector<double>> S(Q, std::vector<double>(Mstar + 1, 0.0));
    for (int j = 0; j < Q; ++j) {
        int Mj = truncation_length(t, ws.ys[j]);
        double sy = std::sqrt(ws.ys[j]);
        for (int n = 1; n <= std::min(Mj, Mstar); ++n) {
            double u = 2.0 * pi * n * ws.ys[j];
            S[j][n] = sy * kappa_direct(t, u) * trig(parity, 2.0 * pi * n * ws.xs[j]);
        }
    }
    std::vector<double> L(Mstar + 1, 0.0);
    for (int k = 1; k <= Mstar; ++k)
        L[k] = std::sqrt(y0) * kappa_direct(t, 2.0 * pi * k * y0);

    // rows k = 2..Mstar, unknowns a_2..a_Mstar, a_1 = 1 moved to the rhs
    int dim = Mstar - 1;
    std::vector<std::vector<double>> A(dim, std::vector<double>(dim, 0.0));
    std::vector<double> rhs(dim, 0.0);
    for (int k = 2; k <= Mstar; ++k) {
        for (int n = 1; n <= Mstar; ++n) {
            double Pkn = 0.0;
            for (int j = 0; j < Q; ++j)
                Pkn += S[j][n] * trig(parity, 2.0 * pi * k * ws.xj[j]);
            Pkn *= 2.0 / Q;
            if (n == k) Pkn -= L[k];
            if (n == 1)
                rhs[k - 2] = -Pkn;
            else
                A[k - 2][n - 2] = Pkn;
        }
    }
    // Row normalization then LU with partial pivoting.
    for (int r = 0; r < dim; ++r) {
        double mx = std::abs(rhs[r]);
        for (double v : A[r]) mx = std::max(mx, std::abs(v));
        if (mx == 0.0) mx = 1.0;
        for (double& v : A[r]) v /= mx;
        rhs[r] /= mx;
    }
    CoreSolve out;
    std::vector<int> piv(dim);
    for (int c = 0; c < dim; ++c) {
        int p = c;
        for (int r = c + 1; r < dim; ++r)
            if (std::abs(A[r][c]) > std::abs(A[p][c])) p = r;
        if (std::abs(A[p][c]) < 1e-300) return out;
        std::swap(A[c], A[p]);
        std::swap(rhs[c], rhs[p]);
        for (int r = c + 1; r < dim; ++r) {
            double f = A[r][c] / A[c][c];
            if (f == 0.0) continue;
            for (int cc = c; cc < dim; ++cc) A[r][cc] -= f * A[c][cc];
            rhs[r] -= f * rhs[c];
        }
    }
    std::vector<double> sol(dim);
    for (int r = dim - 1; r >= 0; --r) {
        double s = rhs[r];
        for (int cc = r + 1; cc < dim; ++cc) s -= A[r][cc] * sol[cc];
        sol[r] = s / A[r][r];
    }
    out.a.assign(Mstar + 1, 0.0);
    out.a[1] = 1.0;
    for (int n = 2; n <= Mstar; ++n) out.a[n] = sol[n - 2];
    out.ok = true;
    return out;
}

// Two-level coefficient mismatch; the eigenvalue detector.
struct Detector {
    Workspace wsA, wsB;
    double yA = 0.52, yB = 0.43;
    Parity parity;

    struct Value {
        double d2 = 0.0, dsum = 0.0;
        std::vector<double> aA, aB;
        bool ok = false;
    };
    Value eval(double t) {
        Value v;
        CoreSolve A = solve_core(t, parity, wsA, yA);
        CoreSolve B = solve_core(t, parity, wsB, yB);
        if (!A.ok || !B.ok) return v;
        int M = static_cast<int>(std::min(A.a.size(), B.a.size())) - 1;
        v.d2 = A.a[std::min(2, M)] - B.a[std::min(2, M)];
        for (int n = 2; n <= std::min(4, M); ++n)
            v.dsum += std::abs(A.a[n] - B.a[n]);
        v.aA = std::move(A.a);
        v.aB = std::move(B.a);
        v.ok = true;
        return v;
    }
};

// Hecke-consistency of a raw core vector, a cheap spurious-root filter.
double core_hecke_mismatch(const std::vector<double>& a) {
    int M = static_cast<int>(a.size()) - 1;
    double worst = 0.0;
    if (M >= 4) worst = std::max(worst, std::abs(a[2] * a[2] - a[4] - 1.0));
    if (M >= 6) worst = std::max(worst, std::abs(a[2] * a[3] - a[6]));
    if (M >= 9) worst = std::max(worst, std::abs(a[3] * a[3] - a[9] - 1.0));
    return worst;
}

struct Candidate {
    double t;
    double bracket;
    std::vector<double> core; // averaged core coefficients
    double detector;
};

// Fourier extraction of lambda(n) for n <= N at a cascade of low horocycles.
struct Extraction {
    std::vector<double> lambda; // [0..N], raw
    std::vector<bool> have;
};

Extraction extract_lambda(double t, Parity parity, const std::vector<double>& core,
                          int N, const ChebSeries& kappa_tab, double kappa_lo) {
    Extraction ex;
    ex.lambda.assign(N + 1, 0.0);
    ex.have.assign(N + 1, false);
    int Mstar = static_cast<int>(core.size()) - 1;
    ex.lambda[1] = 1.0;
    ex.have[1] = true;

    auto kappa = [&](double u) -> double {
        if (u >= kappa_tab.hi()) return 0.0;
        if (u <= kappa_lo) return kappa_direct(t, u);
        return kappa_tab(u);
    };

    // phi with lambda(1)=1 normalization from the core table (valid for
    // points inside the fundamental domain).
    auto phi_core = [&](double x, double y) {
        int M = truncation_length(t, y);
        double sy = std::sqrt(y);
        double acc = 0.0;
        for (int n = 1; n <= std::min(M, Mstar); ++n)
            acc += core[n] * sy * kappa(2.0 * pi * n * y) *
                   trig(parity, 2.0 * pi * n * x);
        return acc;
    };

    double u_hi = t + 3.0 * std::cbrt(std::max(t, 1.0)) + 2.0;
    int n_hi = N;
    while (n_hi > Mstar) {
        double y_level = u_hi / (2.0 * pi * n_hi);
        int Mlevel = truncation_length(t, y_level);
        int Q = 1;
        while (Q < Mlevel + n_hi + 8) Q *= 2;
        // sample phi on the horocycle via pullback
        std::vector<double> vals(Q);
        for (int j = 0; j < Q; ++j) {
            double xj = (j + 0.5) / (2.0 * Q);
            C zs = pullback(C(xj, y_level));
            vals[j] = phi_core(zs.real(), zs.imag());
        }
        int n_lo = std::max(Mstar + 1, static_cast<int>(0.55 * n_hi));
        double sy = std::sqrt(y_level);
        for (int n = n_lo; n <= n_hi; ++n) {
            if (ex.have[n]) continue;
            double div = sy * kappa(2.0 * pi * n * y_level);
            if (std::abs(div) < 0.02 / std::sqrt(std::max(t, 1.0))) continue;
            double c = 0.0;
            for (int j = 0; j < Q; ++j)
                c += vals[j] * trig(parity, 2.0 * pi * n * ((j + 0.5) / (2.0 * Q)));
            c *= 2.0 / Q;
            ex.lambda[n] = c / div;
            ex.have[n] = true;
        }
        int next = static_cast<int>(0.55 * n_hi);
        if (next >= n_hi) break;
        n_hi = next;
    }
    for (int n = 2; n <= std::min(Mstar, N); ++n) {
        if (!ex.have[n]) {
            ex.lambda[n] = core[n];
            ex.have[n] = true;
        }
    }
    // Second pass for holes (kappa zeros): shifted level.
    for (int n = 2; n <= N; ++n) {
        if (ex.have[n]) continue;
        double y_level = (u_hi * 0.83) / (2.0 * pi * n);
        int Mlevel = truncation_length(t, y_level);
        int Q = 1;
        while (Q < Mlevel + n + 8) Q *= 2;
        double sy = std::sqrt(y_level);
        double div = sy * kappa(2.0 * pi * n * y_level);
        if (std::abs(div) < 1e-8) continue;
        double c = 0.0;
        for (int j = 0; j < Q; ++j) {
            double xj = (j + 0.5) / (2.0 * Q);
            C zs = pullback(C(xj, y_level));
            c += phi_core(zs.real(), zs.imag()) * trig(parity, 2.0 * pi * n * xj);
        }
        c *= 2.0 / Q;
        ex.lambda[n] = c / div;
        ex.have[n] = true;
    }
    return ex;
}

// Hecke completion: primes from the raw extraction, prime powers by the
// recurrence, composites by multiplicativity.
std::vector<double> hecke_complete(const std::vector<double>& raw, int N) {
    std::vector<double> lam(N + 1, 0.0);
    lam[1] = 1.0;
    auto primes = arith::primes_up_to(static_cast<std::uint32_t>(N));
    for (std::uint32_t p : primes) {
        // powers
        double lp = raw[p];
        double prev = 1.0, cur = lp;
        std::int64_t pk = p;
        while (pk <= N) {
            lam[pk] = cur;
            double nxt = lp * cur - prev;
            prev = cur;
            cur = nxt;
            if (pk > N / static_cast<std::int64_t>(p)) break;
            pk *= p;
        }
    }
    for (int n = 2; n <= N; ++n) {
        auto f = arith::factorize(n);
        if (f.size() == 1) continue; // prime power, already set
        double v = 1.0;
        for (auto [p, e] : f) {
            std::int64_t pk = 1;
            for (int i = 0; i < e; ++i) pk *= static_cast<std::int64_t>(p);
            v *= lam[pk];
        }
        lam[n] = v;
    }
    return lam;
}

} // namespace

// ---------------------------------------------------------------------------
// MaassForm

struct MaassForm::KappaCache {
    std::once_flag built;
    std::unique_ptr<ChebSeries> tab;
    double lo = 0.3;
};

const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

MaassForm::MaassForm(double t, Parity parity, std::vector<double> lambda_table,
                     double err, double extraction_defect, double rho1_sq)
    : t_(t),
      parity_(parity),
      lambda_(std::move(lambda_table)),
      err_(err),
      extraction_defect_(extraction_defect),
      rho1_sq_(rho1_sq),
      kappa_(std::make_shared<KappaCache>()) {}

double MaassForm::lambda(std::int64_t n) const {
    if (n < 1 || n > n_coeff())
        throw std::out_of_range("MaassForm::lambda: index outside stored table");
    return lambda_[static_cast<std::size_t>(n)];
}

double MaassForm::lambda_extended(std::int64_t n) const {
    if (n < 1) throw std::out_of_range("lambda_extended: n >= 1");
    if (n <= n_coeff()) return lambda_[static_cast<std::size_t>(n)];
    double v = 1.0;
    for (auto [p, e] : arith::factorize(static_cast<std::uint64_t>(n))) {
        if (p > static_cast<std::uint64_t>(n_coeff()))
            throw std::out_of_range(
                "lambda_extended: prime factor beyond stored table");
        double lp = lambda_[static_cast<std::size_t>(p)];
        double prev = 1.0, cur = lp;
        for (int i = 1; i < e; ++i) {
            double nxt = lp * cur - prev;
            prev = cur;
            cur = nxt;
        }
        v *= cur;
    }
    return v;
}

double MaassForm::kappa_bar(double u) const {
    std::call_once(kappa_->built, [&] {
        double hi = series_cutoff(t_) + 2.0;
        kappa_->lo = 0.3;
        kappa_->tab = std::make_unique<ChebSeries>(ChebSeries::build(
            [&](double uu) { return kappa_direct(t_, uu); }, kappa_->lo, hi,
            3e-13, 14, 8192));
    });
    if (u >= kappa_->tab->hi()) return 0.0;
    if (u <= kappa_->lo) return kappa_direct(t_, u);
    return (*kappa_->tab)(u);
}

double MaassForm::min_height() const {
    return series_cutoff(t_) / (2.0 * pi * n_coeff());
}

double MaassForm::truncation_bound(double y) const {
    // sum_{n > M(y)} tau(n) n^{7/64} sqrt(y) kappa_envelope(2 pi n y); the
    // envelope decays superexponentially, thirty terms plus a geometric cap.
    int M = truncation_length(t_, y);
    double sy = std::sqrt(y);
    double acc = 0.0, last = 0.0;
    for (int n = M + 1; n <= M + 30; ++n) {
        double env = bessel::k_scaled_envelope(t_, 2.0 * pi * n * y) *
                     sqrt_cosh_scale(t_);
        last = 3.0 * std::pow(double(n), 0.36) * sy * env;
        acc += last;
    }
    return 2.0 * (acc + last);
}

double MaassForm::evaluate_raw(std::complex<double> z) const {
    double y = z.imag();
    if (!(y > 0.08))
        throw std::domain_error("MaassForm::evaluate: requires Im z > 0.08");
    if (y < min_height())
        throw std::domain_error(
            "MaassForm::evaluate: stored table too short at this height; "
            "minimal admissible Im z is " +
            std::to_string(min_height()));
    int M = std::min(truncation_length(t_, y), n_coeff());
    double sy = std::sqrt(y);
    KahanSum acc;
    for (int n = 1; n <= M; ++n) {
        double u = 2.0 * pi * n * y;
        double term = lambda_[n] * sy * kappa_bar(u) *
                      trig(parity_, 2.0 * pi * n * z.real());
        acc.add(term);
    }
    return acc.value();
}

double MaassForm::evaluate(std::complex<double> z) const {
    if (!(rho1_sq_ > 0.0))
        throw std::logic_error("MaassForm::evaluate: rho1_sq not computed");
    return 2.0 * std::sqrt(rho1_sq_) * evaluate_raw(z);
}

double hecke_residual(const MaassForm& f, std::int64_t n, std::int64_t m) {
    if (n < 1 || m < 1 || n * m > f.n_coeff())
        throw std::out_of_range("hecke_residual: nm outside stored table");
    double lhs = f.lambda(n) * f.lambda(m);
    double rhs = 0.0;
    std::int64_t g = arith::gcd64(n, m);
    for (std::uint64_t dd : arith::divisors(static_cast<std::uint64_t>(g))) {
        auto d = static_cast<std::int64_t>(dd);
        rhs += f.lambda((n / d) * (m / d));
    }
    return std::abs(lhs - rhs);
}

// ---------------------------------------------------------------------------
// CoefficientCache

void CoefficientCache::insert(MaassForm f) {
    for (const auto& r : records) {
        if (std::abs(r.t() - f.t()) < r.err() + f.err()) return; // duplicate
    }
    records.push_back(std::move(f));
    std::sort(records.begin(), records.end(),
              [](const MaassForm& a, const MaassForm& b) { return a.t() < b.t(); });
}

const MaassForm* CoefficientCache::nearest(double t) const {
    const MaassForm* best = nullptr;
    double bd = 1e300;
    for (const auto& r : records) {
        double d = std::abs(r.t() - t);
        if (d < bd) {
            bd = d;
            best = &r;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// solve_spectrum

namespace {

struct RefineResult {
    bool accepted = false;
    double t = 0.0, bracket = 0.0, detector = 0.0;
    std::vector<double> core;
};

RefineResult refine_root(Detector& det, double t1, double t2, double d1,
                         double d2, double precision_target) {
    RefineResult rr;
    // Secant iteration on the two-level a_2 mismatch, safeguarded by the
    // bracket.
    double lo = t1, hi = t2, flo = d1, fhi = d2;
    for (int it = 0; it < 60 && hi - lo > 0.2 * precision_target; ++it) {
        double tm;
        if (std::abs(fhi - flo) > 1e-300) {
            tm = hi - fhi * (hi - lo) / (fhi - flo);
            if (!(tm > lo + 1e-15 && tm < hi - 1e-15)) tm = 0.5 * (lo + hi);
        } else {
            tm = 0.5 * (lo + hi);
        }
        auto v = det.eval(tm);
        if (!v.ok) return rr;
        if ((v.d2 < 0.0) == (flo < 0.0)) {
            lo = tm;
            flo = v.d2;
        } else {
            hi = tm;
            fhi = v.d2;
        }
    }
    double tm = 0.5 * (lo + hi);
    auto v = det.eval(tm);
    if (!v.ok) return rr;
    rr.t = tm;
    rr.bracket = hi - lo;
    rr.detector = v.dsum;
    int M = static_cast<int>(v.aA.size()) - 1;
    rr.core.assign(M + 1, 0.0);
    for (int n = 1; n <= M; ++n) rr.core[n] = 0.5 * (v.aA[n] + v.aB[n]);
    // Acceptance filters: both levels agree and the Hecke structure holds.
    double hk = core_hecke_mismatch(rr.core);
    rr.accepted = v.dsum < 5e-4 && hk < 5e-3;
    return rr;
}

double automorphy_defect(const MaassForm& f) {
    std::mt19937 rng(20240811u);
    std::uniform_real_distribution<double> ux(0.02, 0.48), uy(0.3, 0.82);
    double worst = 0.0, scale = 0.0;
    for (int i = 0; i < 12; ++i) {
        C z(ux(rng), uy(rng));
        C zs = pullback(z);
        double a = f.evaluate_raw(z);
        double b = f.evaluate_raw(zs);
        worst = std::max(worst, std::abs(a - b));
        scale = std::max(scale, std::abs(b));
    }
    return scale > 0.0 ? worst / scale : worst;
}

} // namespace

CoefficientCache solve_spectrum(double t_lo, double t_hi, Parity parity,
                                const SolveOptions& opt) {
    if (!(t_lo > 0.0 && t_hi > t_lo && t_hi <= 200.0))
        throw std::invalid_argument(
            "solve_spectrum: need 0 < t_lo < t_hi <= 200 (desk scale)");
    if (opt.n_coeff < 2 * t_hi)
        throw std::invalid_argument(
            "solve_spectrum: N_coeff must be at least 2*max(t_range), here >= " +
            std::to_string(static_cast<int>(std::ceil(2 * t_hi))));

    // Split the range into per-worker strips; workers share nothing.
    int W = std::max(1, opt.workers);
    double strip = (t_hi - t_lo) / W;
    auto run_strip = [&](std::size_t w) -> std::vector<MaassForm> {
        double lo = t_lo + w * strip;
        double hi = std::min(t_hi, lo + strip);
        Detector det;
        det.parity = parity;
        std::vector<MaassForm> found;
        double step = opt.grid_step;
        double prev_t = lo;
        auto prev = det.eval(prev_t);
        for (double t = lo + step; t < hi + step * 0.5; t += step) {
            double tc = std::min(t, hi);
            auto cur = det.eval(tc);
            if (prev.ok && cur.ok && prev.d2 != 0.0 &&
                (cur.d2 < 0.0) != (prev.d2 < 0.0)) {
                auto rr = refine_root(det, prev_t, tc, prev.d2, cur.d2,
                                      opt.precision_target);
                if (rr.accepted) {
                    // Build the kappa table once for extraction.
                    double hi_u = series_cutoff(rr.t) + 2.0;
                    ChebSeries tab = ChebSeries::build(
                        [&](double uu) { return kappa_direct(rr.t, uu); }, 0.3,
                        hi_u, 3e-13, 14, 8192);
                    auto ex = extract_lambda(rr.t, parity, rr.core, opt.n_coeff,
                                             tab, 0.3);
                    auto lam = hecke_complete(ex.lambda, opt.n_coeff);
                    double exdef = 0.0;
                    for (int n = 2; n <= opt.n_coeff; ++n)
                        if (ex.have[n])
                            exdef = std::max(exdef,
                                             std::abs(ex.lambda[n] - lam[n]));
                    MaassForm f(rr.t, parity, lam,
                                std::max(rr.bracket, opt.precision_target),
                                exdef);
                    double defect = automorphy_defect(f);
                    f = MaassForm(rr.t, parity, f.lambda_table(),
                                  std::max({rr.bracket, defect,
                                            opt.precision_target}),
                                  exdef);
                    found.push_back(std::move(f));
                }
            }
            prev = std::move(cur);
            prev_t = tc;
        }
        return found;
    };
    auto strips = parallel_map<std::vector<MaassForm>>(
        static_cast<std::size_t>(W), W, run_strip);

    CoefficientCache cache;
    cache.t_lo = t_lo;
    cache.t_hi = t_hi;
    cache.n_coeff = opt.n_coeff;
    for (auto& s : strips)
        for (auto& f : s) cache.insert(std::move(f));
    if (opt.with_rho1) {
        TestFunction smoothing(0.5, 2.5);
        for (auto& f : cache.records) rho1_squared(f, smoothing);
    }
    return cache;
}

ExclusionReport exclusion_scan(double t_lo, double t_hi, Parity parity,
                               double grid_step) {
    Detector det;
    det.parity = parity;
    ExclusionReport rep{t_lo, t_hi, 1e300, false};
    for (double t = t_lo; t <= t_hi; t += grid_step) {
        auto v = det.eval(t);
        if (v.ok) rep.min_detector = std::min(rep.min_detector, v.dsum);
    }
    rep.excluded = rep.min_detector > 1e-2;
    return rep;
}

} // namespace maass::forms
