#include "maass/dd.hpp"

#include <numbers>

namespace maass::dd {

namespace {

// 2*pi to double-double precision.
const DD kTwoPi{6.283185307179586476925286766559005768e0,
                2.449293598294706414240771166721920925e-16};
const double kLn2Hi = 6.93147180559945286e-01;
const double kLn2Lo = 2.31904681384629956e-17;

} // namespace

DD exp(DD a) {
    // a = n ln2 + r, |r| <= ln2/2; e^a = 2^n e^r with e^r by Taylor.
    double n = std::nearbyint(a.hi / kLn2Hi);
    DD r = add(a, DD(-n * kLn2Hi, -n * kLn2Lo));
    DD sum(1.0);
    DD term(1.0);
    for (int k = 1; k <= 22; ++k) {
        term = mul(term, r);
        term = mul(term, 1.0 / k);
        sum = add(sum, term);
        if (std::abs(term.hi) < 1e-35 * std::abs(sum.hi)) break;
    }
    double scale = std::ldexp(1.0, static_cast<int>(n));
    return {sum.hi * scale, sum.lo * scale};
}

DD expm1(DD a) {
    if (std::abs(a.hi) > 0.5) return sub(exp(a), DD(1.0));
    DD sum(0.0);
    DD term(1.0);
    for (int k = 1; k <= 26; ++k) {
        term = mul(term, a);
        term = mul(term, 1.0 / k);
        sum = add(sum, term);
        if (std::abs(term.hi) < 1e-35 * (std::abs(sum.hi) + 1e-300)) break;
    }
    return sum;
}

namespace {

DD reduce_two_pi(DD a) {
    double n = std::nearbyint(a.hi / kTwoPi.hi);
    DD r = sub(a, mul(kTwoPi, n));
    // One correction pass in case of edge rounding.
    if (std::abs(r.hi) > kTwoPi.hi) {
        n = std::nearbyint(r.hi / kTwoPi.hi);
        r = sub(r, mul(kTwoPi, n));
    }
    return r;
}

} // namespace

double sin_reduced(DD a) {
    DD r = reduce_two_pi(a);
    return std::sin(r.hi) + r.lo * std::cos(r.hi);
}

double cos_reduced(DD a) {
    DD r = reduce_two_pi(a);
    return std::cos(r.hi) - r.lo * std::sin(r.hi);
}

} // namespace maass::dd
