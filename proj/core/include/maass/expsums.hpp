#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace maass::expsums {

// Parameters of the twisted complete sum
//   S_c(gamma) = sum_{a,b mod c} S(a(gamma a+d), b(gamma b+d), c)
//                e_c(2 gamma a b + (d+u) a + (d+v) b),
// with u, v stored as balanced residues in (-c/2, c/2].
struct TwistedSumParams {
    std::int64_t c = 1;
    std::int64_t d = 0;
    std::int64_t u = 0;
    std::int64_t v = 0;
    std::int64_t gamma = 1;

    TwistedSumParams(std::int64_t c_, std::int64_t d_, std::int64_t u_,
                     std::int64_t v_, std::int64_t gamma_);
};

// Kloosterman sum S(n,m,c) = sum_{x mod c, (x,c)=1} e_c(n x + m xbar).
// Exactly real; computed as a cosine sum over a per-modulus table.
double kloosterman(std::int64_t n, std::int64_t m, std::int64_t c);

// Weil bound (n,m,c)^{1/2} c^{1/2} tau(c).
double weil_bound(std::int64_t n, std::int64_t m, std::int64_t c);

// sum_{x mod c} e_c(a x^2 + b x).
std::complex<double> gauss_sum(std::int64_t a, std::int64_t b, std::int64_t c);

// Defining double sum. Guarded to c <= 5000.
std::complex<double> twisted_sum_direct(const TwistedSumParams& p);

// Completed-square reduction, valid for gcd(c, 2 gamma) = 1:
//   S_c(gamma) = c * sum_{x unit, v x == u (c)} g(gamma x; c)
//                e_c(-(4 gamma)^{-1} x ((d+u) xbar + d)^2),
// with g(m;c) the plain quadratic Gauss sum. Throws std::domain_error on the
// even branch (callers CRT-split first).
std::complex<double> twisted_sum_evaluated(const TwistedSumParams& p);

// c = c1 * c2 with c1 odd, c2 | 2^inf, and parameters such that
// S_c(gamma) = S_{c1}(gamma c2) * S_{c2}(gamma c1).
std::pair<TwistedSumParams, TwistedSumParams> crt_split(const TwistedSumParams& p);

// Exact arithmetic in Z[zeta_c]: values held as integer multiplicity vectors
// over exponent residues, compared after reduction mod the c-th cyclotomic
// polynomial. Supported for c <= 500.
class Cyclotomic {
  public:
    static Cyclotomic kloosterman(std::int64_t n, std::int64_t m, std::int64_t c);
    static Cyclotomic twisted_direct(const TwistedSumParams& p);
    static Cyclotomic twisted_evaluated(const TwistedSumParams& p);

    bool is_zero() const;
    bool equals(const Cyclotomic& other) const;
    std::complex<double> value() const;
    std::int64_t modulus() const { return c_; }

  private:
    explicit Cyclotomic(std::int64_t c) : c_(c), buckets_(c, 0) {}
    std::int64_t c_ = 1;
    std::vector<long long> buckets_;
};

} // namespace maass::expsums
