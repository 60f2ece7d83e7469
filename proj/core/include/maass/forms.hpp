#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "maass/testfunction.hpp"

namespace maass::forms {

enum class Parity { Even, Odd };

const char* to_string(Parity p);

// One Maass-Hecke cusp form on the modular surface: spectral parameter t
// (Laplace eigenvalue 1/4 + t^2), sigma-parity, Hecke eigenvalue table
// lambda(n) normalized by lambda(1) = 1, and solver certificates.
//
// err is the maximum automorphy defect |phi(z) - phi(gamma z)| over a fixed
// probe set (relative to the trace scale), combined with the final secant
// bracket width. extraction_defect records how far the raw Fourier
// extraction sat from the Hecke-completed table that is stored.
class MaassForm {
  public:
    MaassForm() = default;
    MaassForm(double t, Parity parity, std::vector<double> lambda_table,
              double err, double extraction_defect, double rho1_sq = 0.0);

    double t() const { return t_; }
    Parity parity() const { return parity_; }
    double err() const { return err_; }
    double extraction_defect() const { return extraction_defect_; }
    double rho1_sq() const { return rho1_sq_; }
    void set_rho1_sq(double v) { rho1_sq_ = v; }
    int n_coeff() const { return static_cast<int>(lambda_.size()) - 1; }

    // Stored table, 1 <= n <= n_coeff().
    double lambda(std::int64_t n) const;
    // Hecke extension to arbitrary n through the prime factorization;
    // requires every prime factor <= n_coeff().
    double lambda_extended(std::int64_t n) const;

    // phi(z) with the arithmetic normalization rho(1) = 1 (series with
    // lambda coefficients only).
    double evaluate_raw(std::complex<double> z) const;
    // L^2-normalized phi(z); requires rho1_sq to be set.
    double evaluate(std::complex<double> z) const;

    // Smallest Im z admissible for the stored table length.
    double min_height() const;
    // Certified bound for the truncation tail of evaluate at height y.
    double truncation_bound(double y) const;

    const std::vector<double>& lambda_table() const { return lambda_; }

  private:
    double kappa_bar(double u) const; // sqrt(cosh pi t) K_{it}(u), tabulated
    double t_ = 0.0;
    Parity parity_ = Parity::Even;
    std::vector<double> lambda_; // index 0 unused
    double err_ = 0.0;
    double extraction_defect_ = 0.0;
    double rho1_sq_ = 0.0;
    struct KappaCache;
    mutable std::shared_ptr<KappaCache> kappa_;
};

double hecke_residual(const MaassForm& f, std::int64_t n, std::int64_t m);

struct CoefficientCache {
    static constexpr int kVersion = 1;
    int version = kVersion;
    double t_lo = 0.0, t_hi = 0.0;
    int n_coeff = 0;
    std::vector<MaassForm> records; // sorted by t

    // Keeps records sorted; drops duplicates (|t_i - t_j| < err_i + err_j).
    void insert(MaassForm f);
    const MaassForm* nearest(double t) const;
};

struct SolveOptions {
    double precision_target = 1e-9;
    int n_coeff = 80;
    double grid_step = 0.01;
    int workers = 1;
    bool with_rho1 = true; // compute rho1_sq per form (needs large n_coeff)
};

// Hejhal-style implicit automorphy collocation over a t-scan with secant
// refinement, two y-levels for spurious-root rejection, and low-horocycle
// Fourier extraction of the coefficient table.
CoefficientCache solve_spectrum(double t_lo, double t_hi, Parity parity,
                                const SolveOptions& opt);

// Scan diagnostic for intervals believed empty: the minimum over the grid of
// the two-level coefficient mismatch. Eigenvalues force this to ~0, so a
// uniformly large value certifies (numerically) that none were missed.
struct ExclusionReport {
    double t_lo, t_hi;
    double min_detector;
    bool excluded; // min_detector >= threshold
};
ExclusionReport exclusion_scan(double t_lo, double t_hi, Parity parity,
                               double grid_step = 0.005);

// L(1, sym^2) by the functional-equation-balanced smoothed sum over
// lambda(n^2) with the zeta(2s) correction folded into the Dirichlet
// coefficients; returns 4 / L(1, sym^2) and stores it on the form.
double rho1_squared(MaassForm& f, const TestFunction& smoothing);
// Required table length for the smoothed sum at this spectral parameter.
int rho1_required_coeffs(double t);

// Cache serialization: versioned JSON lines, one form per line, decimal
// strings at full precision (bit-exact round trip).
std::string serialize(const CoefficientCache& cache);
CoefficientCache deserialize(const std::string& text);
void save_cache(const CoefficientCache& cache, const std::string& path);
CoefficientCache load_cache(const std::string& path);

} // namespace maass::forms
