// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Heavier than the unit tests; expects the bundled coefficient
// cache under data/.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "maass/arith.hpp"
#include "maass/expsums.hpp"
#include "maass/forms.hpp"
#include "maass/kuznetsov.hpp"
#include "maass/nodal.hpp"
#include "maass/qe.hpp"
#include "maass/testfunction.hpp"
#include "maass/transforms.hpp"

using namespace maass;
using std::numbers::pi;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool ok,
            const std::string& detail) {
    std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", idx,
                name.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

const forms::CoefficientCache& bundled_cache() {
    static forms::CoefficientCache cache = forms::load_cache(
        std::string(MAASS_SOURCE_DIR) + "/data/cache-t40.jsonl");
    return cache;
}

// --------------------------------------------------------------------------

void criterion_1_spectrum() {
    auto t0 = std::chrono::steady_clock::now();
    forms::SolveOptions opt;
    opt.precision_target = 1e-9;
    opt.n_coeff = 100;
    opt.with_rho1 = false;
    opt.workers = 2;
    auto odd = forms::solve_spectrum(9.0, 15.0, forms::Parity::Odd, opt);
    auto even = forms::solve_spectrum(9.0, 15.0, forms::Parity::Even, opt);
    double elapsed = seconds_since(t0);

    // The named spectral parameters, each to 1e-6, exactly one per window.
    int odd_hits = 0, even_hits = 0;
    double t_odd = 0.0, t_even = 0.0;
    for (const auto& f : odd.records)
        if (std::abs(f.t() - 9.533695) < 1e-3) {
            ++odd_hits;
            t_odd = f.t();
        }
    for (const auto& f : even.records)
        if (std::abs(f.t() - 13.779751) < 1e-3) {
            ++even_hits;
            t_even = f.t();
        }
    bool named_ok = odd_hits == 1 && even_hits == 1 &&
                    std::abs(t_odd - 9.533695) < 1e-6 &&
                    std::abs(t_even - 13.779751) < 1e-6;
    double worst = 0.0;
    for (const auto* cache : {&odd, &even})
        for (const auto& f : cache->records)
            for (int n = 1; n <= 10; ++n)
                for (int m = 1; m <= 10; ++m)
                    worst = std::max(worst, forms::hecke_residual(f, n, m));
    bool ok = named_ok && worst < 1e-8 && elapsed <= 300.0;
    report(1, "spectrum over (9,15)", ok,
           "t_odd=" + fmt(t_odd) + " t_even=" + fmt(t_even) +
               " named windows hit uniquely; total forms found " +
               std::to_string(odd.records.size() + even.records.size()) +
               "; worst Hecke residual (n,m<=10) " + fmt(worst) + "; " +
               fmt(elapsed) + "s");
}

void criterion_2_hecke() {
    const auto& cache = bundled_cache();
    double worst = 0.0;
    for (const auto& f : cache.records)
        for (int n = 1; n * n <= 100; ++n)
            for (int m = n; n * m <= 100; ++m)
                worst = std::max(worst, forms::hecke_residual(f, n, m));
    report(2, "Hecke recurrence on the cached spectrum", worst < 1e-7,
           std::to_string(cache.records.size()) + " forms, worst residual " +
               fmt(worst));
}

void criterion_3_expsums() {
    auto t0 = std::chrono::steady_clock::now();
    bool weil_ok = true;
    double worst_ratio = 0.0;
    for (std::int64_t c = 1; c <= 2000 && weil_ok; ++c)
        for (std::int64_t n = 1; n <= 10; ++n)
            for (std::int64_t m = 1; m <= 10; ++m) {
                double r = std::abs(expsums::kloosterman(n, m, c)) /
                           expsums::weil_bound(n, m, c);
                worst_ratio = std::max(worst_ratio, r);
                if (r > 1.0 + 1e-9) {
                    weil_ok = false;
                    break;
                }
            }
    bool gauss_ok = true;
    std::mt19937 rng(2024);
    for (std::int64_t c = 1; c <= 999; c += 2) {
        std::int64_t a = 1 + std::int64_t(rng() % c);
        while (arith::gcd64(a, c) != 1) a = 1 + std::int64_t(rng() % c);
        double mag = std::abs(expsums::gauss_sum(a, std::int64_t(rng() % 7), c));
        if (std::abs(mag - std::sqrt(double(c))) > 1e-8 * std::sqrt(double(c))) {
            gauss_ok = false;
            break;
        }
    }
    // closed form vs direct, exact cyclotomic arithmetic, 100 random cases
    const std::int64_t odd_c[] = {3,  5,  7,  9,  11, 15, 21, 25, 27,
                                  33, 35, 45, 49, 63, 75, 81, 99, 105,
                                  121, 135, 147, 165, 189, 175};
    bool exact_ok = true, zero_ok = true;
    int zero_cases = 0;
    for (int i = 0; i < 100 && exact_ok; ++i) {
        std::int64_t c = odd_c[rng() % (sizeof(odd_c) / sizeof(odd_c[0]))];
        std::int64_t g = 1 + 2 * std::int64_t(rng() % 3);
        if (arith::gcd64(g, c) != 1) {
            --i;
            continue;
        }
        std::int64_t d = std::int64_t(rng() % 6), u = std::int64_t(rng() % c),
                     v = std::int64_t(rng() % c);
        expsums::TwistedSumParams p(c, d, u, v, g);
        auto direct = expsums::Cyclotomic::twisted_direct(p);
        auto evaluated = expsums::Cyclotomic::twisted_evaluated(p);
        if (!direct.equals(evaluated)) exact_ok = false;
        if (arith::gcd64(u, c) != arith::gcd64(v, c)) {
            ++zero_cases;
            if (!direct.is_zero()) zero_ok = false;
        }
    }
    double elapsed = seconds_since(t0);
    bool ok = weil_ok && gauss_ok && exact_ok && zero_ok && elapsed <= 600.0;
    report(3, "exponential sums", ok,
           "worst Weil ratio " + fmt(worst_ratio) + ", gauss " +
               (gauss_ok ? "ok" : "FAIL") + ", 100 exact matches " +
               (exact_ok ? "ok" : "FAIL") + ", " +
               std::to_string(zero_cases) + " exact-zero cases " +
               (zero_ok ? "ok" : "FAIL") + "; " + fmt(elapsed) + "s");
}

void criterion_4_transform() {
    transforms::WindowKernel w(50.0, 10.0);
    transforms::BesselTransform bt(w, 1e-11);
    double cmax = 0.0;
    for (double x = 1e-3; x <= 0.5; x *= 1.7)
        cmax = std::max(cmax, std::abs(bt.g(x)) / (w.G * x * x));
    bool lem24 = cmax <= 10.0;
    double x_small = 0.5 * w.G * std::pow(w.T, 0.8);
    double small = std::abs(bt.g(x_small));
    double peak = 0.0;
    for (int i = 0; i <= 25; ++i)
        peak = std::max(peak, std::abs(bt.g(w.G * w.T *
                                            std::pow(10.0, i / 25.0))));
    bool lem22 = small <= 1e-6 * peak;
    auto ae = transforms::AsymptoticExpansion::standard(4);
    double x_far = 10.0 * w.G * w.T;
    auto sur = transforms::g_asymptotic_sum(ae, w, x_far, 0.147);
    auto ref = bt.g_tilde(x_far);
    double rel = std::abs(sur - ref) / std::abs(ref);
    bool lem23 = rel <= 1e-3;
    // tolerance halving
    transforms::BesselTransform bt2(w, 5e-12);
    bool halving = true;
    for (double x : {0.3, 70.0, 900.0})
        if (std::abs(bt.g(x) - bt2.g(x)) > 2e-11) halving = false;
    bool ok = lem24 && lem22 && lem23 && halving;
    report(4, "Bessel transform bounds and surrogate", ok,
           "small-x ratio " + fmt(cmax) + ", decay " + fmt(small / peak) +
               ", surrogate rel " + fmt(rel) + ", halving " +
               (halving ? "ok" : "FAIL"));
}

void criterion_5_kuznetsov() {
    auto t0 = std::chrono::steady_clock::now();
    const auto& cache = bundled_cache();
    transforms::WindowKernel w(12.0, 3.0);
    bool ok = true;
    std::string detail;
    for (auto [n, m] : {std::pair<std::int64_t, std::int64_t>{1, 1},
                        {1, 2},
                        {2, 3}}) {
        kuznetsov::TraceCheckConfig cfg(w, n, m, 40.0, 10000, 1e-3, 1e-10);
        double r = kuznetsov::trace_residual(cfg, cache);
        detail += "r(" + std::to_string(n) + "," + std::to_string(m) + ")=" +
                  fmt(r) + " ";
        if (!(r <= 1e-3)) ok = false;
    }
    // refinement ladder: tighten t_max, c_max and the quadrature tolerances
    double ladder[3];
    {
        kuznetsov::TraceCheckConfig c1(w, 1, 2, 36.5, 500, 5e-2, 3e-5);
        kuznetsov::TraceCheckConfig c2(w, 1, 2, 38.0, 2000, 1e-2, 1e-7);
        kuznetsov::TraceCheckConfig c3(w, 1, 2, 40.0, 10000, 1e-3, 1e-10);
        ladder[0] = kuznetsov::trace_residual(c1, cache);
        ladder[1] = kuznetsov::trace_residual(c2, cache);
        ladder[2] = kuznetsov::trace_residual(c3, cache);
    }
    bool mono = ladder[0] >= ladder[1] && ladder[1] >= ladder[2];
    double elapsed = seconds_since(t0);
    ok = ok && mono && elapsed <= 900.0;
    report(5, "Kuznetsov identity", ok,
           detail + "ladder " + fmt(ladder[0]) + " > " + fmt(ladder[1]) +
               " > " + fmt(ladder[2]) + "; " + fmt(elapsed) + "s");
}

void criterion_6_pivot() {
    const auto& cache = bundled_cache();
    TestFunction psi(1.0, 3.0);
    double worst = 0.0;
    int forms_tested = 0;
    for (const auto& f : cache.records) {
        double X = f.t();
        ++forms_tested;
        for (std::int64_t m = 1; m <= 6; ++m) {
            auto direct = qe::qe_sum(f, m, X, psi);
            double fact = qe::qe_sum_factorized(f, m, X, psi);
            double rel = std::abs(direct.value - fact) /
                         std::max(std::abs(direct.value), 1e-3);
            worst = std::max(worst, rel);
        }
    }
    report(6, "QE pivot identity (Hecke-factorized rewrite)", worst <= 1e-9,
           std::to_string(forms_tested) + " forms, m <= 6, worst rel " +
               fmt(worst));
}

void criterion_7_qe_trend() {
    const auto& cache = bundled_cache();
    TestFunction psi(1.0, 3.0);
    std::vector<double> low, high, m1_over_t;
    for (const auto& f : cache.records) {
        if (f.parity() != forms::Parity::Even) continue;
        auto rep = qe::corollary_discrepancy(f, 0, psi);
        if (f.t() >= 9.0 && f.t() <= 20.0) low.push_back(rep.discrepancy);
        if (f.t() >= 25.0 && f.t() <= 40.0) high.push_back(rep.discrepancy);
        auto rep1 = qe::corollary_discrepancy(f, 1, psi);
        m1_over_t.push_back(std::abs(rep1.value) / f.t());
    }
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return v.empty() ? 0.0 : v[v.size() / 2];
    };
    double med_low = median(low), med_high = median(high);
    std::vector<double> all0;
    for (const auto& f : cache.records)
        if (f.parity() == forms::Parity::Even)
            all0.push_back(qe::corollary_discrepancy(f, 0, psi).discrepancy);
    double med0 = median(all0);
    bool no_blowup = true;
    double worst1 = 0.0;
    for (double v : m1_over_t) {
        worst1 = std::max(worst1, v);
        if (v >= 10.0 * med0) no_blowup = false;
    }
    bool ok = med_high < med_low && no_blowup && !low.empty() && !high.empty();
    report(7, "QE discrepancy trend", ok,
           "m=0 median " + fmt(med_low) + " (t in [9,20], n=" +
               std::to_string(low.size()) + ") vs " + fmt(med_high) +
               " (t in [25,40], n=" + std::to_string(high.size()) +
               "); m=1 worst |value|/t " + fmt(worst1) + " vs 10x median " +
               fmt(10.0 * med0));
}

void criterion_8_geodesic() {
    const auto& cache = bundled_cache();
    nodal::GeodesicSegment seg(1.0, 2.0);
    bool ok = true;
    std::string why;
    std::vector<double> ts, ss;
    double min_restriction = 1e300, worst_chain = 1e300;
    for (const auto& f : cache.records) {
        if (f.parity() != forms::Parity::Even) continue;
        auto rep = nodal::chain_inequality_report(f, seg);
        min_restriction = std::min(min_restriction, rep.l2_restriction);
        if (rep.l2_restriction <= 0.05) {
            ok = false;
            why += "restriction t=" + fmt(f.t()) + " ";
        }
        double chain = rep.sign_changes * rep.m1 - 0.99 * rep.l1;
        worst_chain = std::min(worst_chain, rep.lower_bound_ratio);
        if (chain < 0.0) {
            ok = false;
            why += "chain t=" + fmt(f.t()) + " ";
        }
        // refinement stability is enforced inside the certified count
        if (f.t() >= 13.0 && f.t() <= 40.0) {
            ts.push_back(f.t());
            ss.push_back(double(rep.sign_changes));
        }
    }
    double rho = nodal::spearman(ts, ss);
    if (!(rho > 0.5)) {
        ok = false;
        why += "spearman=" + fmt(rho) + " ";
    }
    report(8, "geodesic sign-change machinery", ok,
           "min restriction " + fmt(min_restriction) + ", min S*M1/L1 " +
               fmt(worst_chain) + ", spearman(S,t) " + fmt(rho) + " over " +
               std::to_string(ts.size()) + " even forms " + why);
}

void criterion_9_oscillatory() {
    TestFunction psi(1.0, 3.0);
    transforms::OscillatoryPhase p(20, 3, 200.0, 2000.0, psi);
    double R = 2000.0;
    // Lemma-style bound for the pure phase integral over [R, 2R]^2.
    auto quad2 = transforms::oscillatory_double_integral(p, R, 2.0 * R, R,
                                                         2.0 * R, 0.0, 0.0,
                                                         false, 14, 12);
    double lambda = std::abs(p.phi_rr(1, 1, 1.5 * R, 1.5 * R));
    double bound = (1.0 + std::abs(std::log(R)) + std::abs(std::log(R)) +
                    std::abs(std::log(lambda))) /
                   lambda;
    double ratio = std::abs(quad2.value) / bound;
    bool lem26 = ratio <= 100.0;
    // Poisson: identity and tail at the desk parameters.
    auto rep = transforms::poisson_tail_check(p, 0, 0, 3);
    bool poisson = rep.lattice_rel_err <= 1e-4 && rep.tail_ratio <= 0.05;
    report(9, "oscillatory double integrals and Poisson decomposition",
           lem26 && poisson,
           "bound ratio " + fmt(ratio) + ", lattice rel err " +
               fmt(rep.lattice_rel_err) + ", tail ratio " +
               fmt(rep.tail_ratio));
}

void criterion_10_reproducibility() {
    // selftest twice -> byte-identical stdout; cache round-trip bit-exact.
    std::string cli = MAASS_CLI_PATH;
    std::string cache_path =
        std::string(MAASS_SOURCE_DIR) + "/data/cache-t40.jsonl";
    auto run = [&](const std::string& out) {
        std::string cmd = cli + " selftest --cache " + cache_path + " --out " +
                          out + " >/dev/null 2>&1";
        return std::system(cmd.c_str());
    };
    int rc1 = run("/tmp/maass_selftest_1.txt");
    int rc2 = run("/tmp/maass_selftest_2.txt");
    auto slurp = [](const std::string& p) {
        std::ifstream f(p, std::ios::binary);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };
    std::string a = slurp("/tmp/maass_selftest_1.txt");
    std::string b = slurp("/tmp/maass_selftest_2.txt");
    bool selftest_ok = rc1 == 0 && rc2 == 0;
    bool identical = !a.empty() && a == b;
    const auto& cache = bundled_cache();
    std::string s1 = forms::serialize(cache);
    bool roundtrip = forms::serialize(forms::deserialize(s1)) == s1;
    report(10, "reproducibility", selftest_ok && identical && roundtrip,
           std::string("selftest rc=") + std::to_string(rc1) + "/" +
               std::to_string(rc2) + ", outputs " +
               (identical ? "byte-identical" : "DIFFER") + ", cache " +
               (roundtrip ? "bit-exact" : "DIFFERS"));
}

} // namespace

int main() {
    std::printf("acceptance suite\n");
    try {
        criterion_1_spectrum();
        criterion_2_hecke();
        criterion_3_expsums();
        criterion_4_transform();
        criterion_5_kuznetsov();
        criterion_6_pivot();
        criterion_7_qe_trend();
        criterion_8_geodesic();
        criterion_9_oscillatory();
        criterion_10_reproducibility();
    } catch (const std::exception& e) {
        std::printf("[FAIL] suite aborted: %s\n", e.what());
        return 99;
    }
    std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
