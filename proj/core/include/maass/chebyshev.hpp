#pragma once

#include <functional>
#include <vector>

namespace maass {

// Piecewise Chebyshev interpolant with adaptive panel splitting. Panel error
// is estimated from the tail of the Chebyshev coefficients.
class ChebSeries {
  public:
    static ChebSeries build(const std::function<double(double)>& f, double a,
                            double b, double tol, int degree = 16,
                            int max_panels = 4096);

    double operator()(double x) const;
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    std::size_t panel_count() const { return panels_.size(); }
    double max_tail() const { return max_tail_; }

  private:
    struct Panel {
        double a, b;
        std::vector<double> coef;
    };
    std::vector<Panel> panels_; // sorted by a
    double lo_ = 0.0, hi_ = 0.0;
    double max_tail_ = 0.0;
};

} // namespace maass
