#pragma once

#include <functional>
#include <vector>

#include "maass/forms.hpp"

namespace maass::nodal {

// Compact segment beta = {iy : y_min <= y <= y_max} of the geodesic
// delta = {iy : y > 0}; hyperbolic arc length ds = dy/y.
struct GeodesicSegment {
    double y_min, y_max;
    GeodesicSegment(double lo, double hi);
    double length() const; // log(y_max / y_min)
};

struct SampledTrace {
    std::vector<double> y;
    std::vector<double> phi;
    double point_err = 0.0; // certified per-point evaluation error
    bool zero_trace = false; // odd form: phi vanishes identically on delta
};

// Adaptive grid with spacing y_min / (density * max(t,1)); evaluation through
// the L^2-normalized expansion (requires rho1_sq).
SampledTrace sample_on_axis(const forms::MaassForm& f,
                            const GeodesicSegment& seg, double density = 10.0);

// Certified sign alternations: both neighbours must clear 10x the per-point
// error. Throws std::runtime_error when a crossing stays unresolved.
int count_sign_changes(const SampledTrace& trace);

// Samples at the given and doubled density and insists the counts agree.
int sign_changes_certified(const forms::MaassForm& f,
                           const GeodesicSegment& seg, double density = 10.0);

// M1 = sup over subintervals of |int f(y) dy/y| = max I - min I of the
// running integral (the optimum sits at extrema of I).
double m1_sup(const forms::MaassForm& f, const GeodesicSegment& seg);
double m1_sup_fn(const std::function<double(double)>& f,
                 const GeodesicSegment& seg, int cells = 4000);

// int_beta |phi|^2 dy/y.
double restriction_norm(const forms::MaassForm& f, const GeodesicSegment& seg);

double l1_norm(const forms::MaassForm& f, const GeodesicSegment& seg);
double l1_norm_fn(const std::function<double(double)>& f,
                  const GeodesicSegment& seg, int cells = 4000);

struct NodalReport {
    int sign_changes = 0;
    double m1 = 0.0;
    double l1 = 0.0;
    double l2_restriction = 0.0;
    double sup_norm = 0.0;       // max |phi| over the sampled trace
    double lower_bound_ratio = 0.0; // S * M1 / L1
    double t_ref_onetwelfth = 0.0;  // t^{1/12}
    double t_ref_eps = 0.0;         // t^{eps/4}, eps = 0.1
    bool zero_trace = false;
};

// Assembles the chain S(f) M1(f) >= ||f||_{L1} >= ||f||_{L2}^2 / ||f||_{Linf}
// from sampled quantities (the second step tested as L1 * sup >= L2^2, which
// holds at the sample level by Cauchy-Schwarz).
NodalReport chain_inequality_report(const forms::MaassForm& f,
                                    const GeodesicSegment& seg,
                                    double density = 10.0);

// Spearman rank correlation, for the sign-change growth trend.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

} // namespace maass::nodal
