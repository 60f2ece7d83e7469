#pragma once

#include <cmath>

namespace maass {

// Minimal double-double arithmetic for the few places where plain double
// phase accumulation loses too many digits (Bessel kernels near the
// order/argument transition). Unnormalized error-free transforms.
struct DD {
    double hi = 0.0;
    double lo = 0.0;

    DD() = default;
    DD(double h) : hi(h), lo(0.0) {}
    DD(double h, double l) : hi(h), lo(l) {}

    double to_double() const { return hi + lo; }
};

namespace dd {

inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline DD quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD add(DD a, double b) { return add(a, DD(b)); }

inline DD sub(DD a, DD b) { return add(a, DD(-b.hi, -b.lo)); }

inline DD mul(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DD mul(DD a, double b) { return mul(a, DD(b)); }

inline DD div(DD a, DD b) {
    double q1 = a.hi / b.hi;
    DD r = sub(a, mul(b, q1));
    double q2 = r.hi / b.hi;
    r = sub(r, mul(b, q2));
    double q3 = r.hi / b.hi;
    DD q = quick_two_sum(q1, q2);
    return add(q, q3);
}

// exp for |a| <= ~700, accurate to ~1e-30 relative.
DD exp(DD a);
DD expm1(DD a);

inline DD sinh(DD a) {
    if (std::abs(a.hi) < 0.5) {
        DD em1 = expm1(a);
        // sinh = (e^a - e^-a)/2 = em1 (1 + 1/(1+em1)) / 2
        DD t = div(em1, add(em1, 1.0));
        return mul(add(em1, t), 0.5);
    }
    DD e = exp(a);
    return mul(sub(e, div(DD(1.0), e)), 0.5);
}

inline DD cosh(DD a) {
    DD e = exp(a);
    return mul(add(e, div(DD(1.0), e)), 0.5);
}

// sin/cos of a double-double angle, reduced mod 2*pi in extended precision.
double sin_reduced(DD a);
double cos_reduced(DD a);

} // namespace dd
} // namespace maass
