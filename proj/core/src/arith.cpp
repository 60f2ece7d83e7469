#include "maass/arith.hpp"

#include <cmath>
#include <stdexcept>

namespace maass::arith {

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t balanced_mod(std::int64_t a, std::int64_t c) {
    std::int64_t r = a % c;
    if (r < 0) r += c;
    if (2 * r > c) r -= c;
    return r;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t c) {
    std::int64_t r0 = c, r1 = ((a % c) + c) % c;
    std::int64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t r2 = r0 - q * r1;
        std::int64_t s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    if (r0 != 1) throw std::domain_error("inv_mod: arguments not coprime");
    return ((s0 % c) + c) % c;
}

std::uint64_t divisor_count(std::uint64_t n) {
    std::uint64_t count = 1;
    for (auto [p, e] : factorize(n)) {
        (void)p;
        count *= static_cast<std::uint64_t>(e + 1);
    }
    return count;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> d{1};
    for (auto [p, e] : factorize(n)) {
        std::size_t m = d.size();
        std::uint64_t pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < m; ++i) d.push_back(d[i] * pk);
        }
    }
    return d;
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, int>> f;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            f.emplace_back(p, e);
        }
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t n) {
    std::vector<bool> sieve(n + 1, true);
    std::vector<std::uint32_t> primes;
    for (std::uint32_t p = 2; p <= n; ++p) {
        if (!sieve[p]) continue;
        primes.push_back(p);
        for (std::uint64_t q = std::uint64_t(p) * p; q <= n; q += p) sieve[q] = false;
    }
    return primes;
}

} // namespace maass::arith
