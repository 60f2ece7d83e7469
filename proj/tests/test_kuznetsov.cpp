#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <numbers>

#include "maass/forms.hpp"
#include "maass/kuznetsov.hpp"
#include "maass/transforms.hpp"

using namespace maass;
using namespace maass::kuznetsov;
using std::numbers::pi;

namespace {

const forms::CoefficientCache* bundled() {
    static forms::CoefficientCache cache;
    static bool tried = false, ok = false;
    if (!tried) {
        tried = true;
        try {
            cache = forms::load_cache(std::string(MAASS_SOURCE_DIR) +
                                      "/data/cache-t40.jsonl");
            ok = cache.t_hi >= 39.0;
        } catch (...) {
            ok = false;
        }
    }
    return ok ? &cache : nullptr;
}

} // namespace

TEST_CASE("config invariants") {
    transforms::WindowKernel w(12.0, 3.0);
    CHECK_THROWS_AS(TraceCheckConfig(w, 1, 1, 20.0, 100, 1e-3),
                    std::invalid_argument); // t_max < T + 8G
    CHECK_NOTHROW(TraceCheckConfig(w, 1, 1, 36.5, 100, 1e-3));
}

TEST_CASE("diagonal term: delta_{nm} and the Laplace-approximation scale") {
    transforms::WindowKernel w(12.0, 3.0);
    CHECK(diagonal_term(w, 1, 2) == 0.0);
    double d = diagonal_term(w, 1, 1);
    CHECK(d > 0.0);
    // Laplace approximation of (1/pi^2) int tanh(pi y) h y dy for T >> 1:
    // both bumps contribute sqrt(pi) G T, so ~ (2/pi^2) sqrt(pi) G T tanh(pi T).
    for (double T : {15.0, 30.0}) {
        for (double G : {0.8, 0.4}) {
            transforms::WindowKernel ww(T, G);
            double val = diagonal_term(ww, 2, 2);
            double ref = 2.0 / (pi * pi) * std::sqrt(pi) * G * T * std::tanh(pi * T);
            CAPTURE(T);
            CAPTURE(G);
            CHECK(val == doctest::Approx(ref).epsilon(0.01 / T + 0.5 * G * G / (T * T) + 5e-3));
        }
    }
}

TEST_CASE("Eisenstein term is nonnegative for n = m and symmetric") {
    transforms::WindowKernel w(12.0, 3.0);
    CHECK(eisenstein_term(w, 1, 1, 36.5) >= 0.0);
    CHECK(eisenstein_term(w, 2, 2, 36.5) >= 0.0);
    CHECK(eisenstein_term(w, 2, 3, 36.5) ==
          doctest::Approx(eisenstein_term(w, 3, 2, 36.5)).epsilon(1e-10));
}

TEST_CASE("below the spectral gap the spectral side is continuous-only") {
    // T = 2, G = 0.5: the window mass sits entirely below t ~ 9.5.
    transforms::WindowKernel w(2.0, 0.5);
    double eis = eisenstein_term(w, 1, 1, 7.0);
    CHECK(eis > 0.0);
    if (const auto* cache = bundled()) {
        double cusp = 0.0;
        for (const auto& f : cache->records)
            cusp += w(f.t()) * f.rho1_sq() * f.lambda(1) * f.lambda(1);
        CHECK(cusp < 1e-10 * eis);
    }
}

TEST_CASE("c-tail certificate is small at the acceptance configuration") {
    transforms::WindowKernel w(12.0, 3.0);
    double tail = 0.0;
    kloosterman_term(w, 1, 1, 2000, &tail);
    CHECK(tail < 1e-4);
}

TEST_CASE("trace residual with the bundled cache" * doctest::skip(false)) {
    const auto* cache = bundled();
    if (!cache) {
        MESSAGE("bundled cache not present; residual checks run in acceptance");
        return;
    }
    transforms::WindowKernel w(12.0, 3.0);
    TraceCheckConfig cfg(w, 1, 1, 40.0, 3000, 1e-3);
    auto b = trace_breakdown(cfg, *cache);
    CAPTURE(b.cusp);
    CAPTURE(b.eisenstein);
    CAPTURE(b.diagonal);
    CAPTURE(b.kloosterman);
    double residual = std::abs(b.spectral() - b.geometric()) /
                      std::max(std::abs(b.geometric()), cfg.tol);
    CHECK(residual < 1e-3);
    // positivity: spectral side at n = m dominates the cusp-only sum
    CHECK(b.spectral() >= b.cusp);
}
