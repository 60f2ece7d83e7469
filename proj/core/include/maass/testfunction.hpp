#pragma once

#include <complex>
#include <vector>

namespace maass {

// Smooth compactly supported test function on (0, infinity): a weighted sum
// of bumps w * exp(-1/((x-a)(b-x))) on (a, b). Derivatives come from the
// Leibniz recurrence through g = -1/((x-a)(b-x)), whose own derivatives have
// a closed form by partial fractions.
class TestFunction {
  public:
    TestFunction(double a, double b, double weight = 1.0);

    double support_lo() const;
    double support_hi() const; // the l in "supported in (0, l)"

    double operator()(double x) const;
    double derivative(int order, double x) const; // order <= 24

    // Mellin transform int_0^inf psi(y) y^{s-1} dy.
    std::complex<double> mellin(std::complex<double> s) const;

    // W^{k,inf} norm estimate: max_{j<=k} sup |psi^{(j)}|, dense sampling
    // with a 4x refinement cross-check.
    double sobolev_norm(int k) const;

    double integral() const; // int_0^inf psi

    TestFunction operator+(const TestFunction& other) const;
    TestFunction operator*(double scale) const;

  private:
    struct Bump {
        double a, b, w;
    };
    std::vector<Bump> bumps_;
    TestFunction() = default;
};

} // namespace maass
