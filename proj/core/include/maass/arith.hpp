#pragma once

#include <cstdint>
#include <vector>

namespace maass {

// Compensated (Kahan-Neumaier) accumulator. Deterministic for a fixed
// summation order.
class KahanSum {
  public:
    void add(double x) {
        double t = s_ + x;
        if (std::abs(s_) >= std::abs(x))
            c_ += (s_ - t) + x;
        else
            c_ += (x - t) + s_;
        s_ = t;
    }
    double value() const { return s_ + c_; }

  private:
    double s_ = 0.0;
    double c_ = 0.0;
};

namespace arith {

std::int64_t gcd64(std::int64_t a, std::int64_t b);

// Balanced residue in (-c/2, c/2].
std::int64_t balanced_mod(std::int64_t a, std::int64_t c);

// Modular inverse of a mod c; requires gcd(a, c) = 1.
std::int64_t inv_mod(std::int64_t a, std::int64_t c);

// a*b mod c without overflow for c < 2^31.
inline std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t c) {
    return (a % c) * (b % c) % c;
}

std::uint64_t divisor_count(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);
std::vector<std::uint32_t> primes_up_to(std::uint32_t n);

} // namespace arith
} // namespace maass
