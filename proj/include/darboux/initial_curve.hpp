#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "darboux/linalg.hpp"
#include "darboux/smooth.hpp"

namespace darboux {

// Geometric Cauchy datum: a curve in R^(1,2) with exact derivatives.
// Admissibility for the lightlike-normal-plane reduction requires
// x1' - x2' != 0 and x3' != 0 on the interval.
struct InitialCurve {
    Smooth1D x1, x2, x3;
    double t_min = 0, t_max = 1;
    double t0 = 0.5;

    Vec3 gamma(double t) const { return {x1(t), x2(t), x3(t)}; }
    Vec3 dgamma(double t, int order = 1) const {
        return {x1.deriv(t, order), x2.deriv(t, order), x3.deriv(t, order)};
    }
};

struct AdmissibilityReport {
    double min_abs_d12 = 0;  // min |x1' - x2'|
    double min_abs_d3 = 0;   // min |x3'|
    bool pass = false;
};

inline AdmissibilityReport validate(const InitialCurve& c, int samples = 400) {
    AdmissibilityReport r;
    r.min_abs_d12 = r.min_abs_d3 = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= samples; ++i) {
        const double t = c.t_min + (c.t_max - c.t_min) * i / samples;
        const Vec3 d = c.dgamma(t, 1);
        r.min_abs_d12 = std::min(r.min_abs_d12, std::abs(d.x - d.y));
        r.min_abs_d3 = std::min(r.min_abs_d3, std::abs(d.z));
    }
    r.pass = r.min_abs_d12 > 0.0 && r.min_abs_d3 > 0.0;
    return r;
}

// Residual of the quadrature-parametrization relation the components must
// satisfy for the lift constant r(t) = t:
//   -4 ((x1')^2 - (x2')^2 - (x3')^2) t^6 + 2 (x1'-x2')^4
//   - (x1'-x2')^3 (x1''-x2'') t.
inline double quadrature_constraint_residual(const InitialCurve& c, double t) {
    const Vec3 d1 = c.dgamma(t, 1);
    const Vec3 d2 = c.dgamma(t, 2);
    const double w = d1.x - d1.y;
    const double t6 = t * t * t * t * t * t;
    return -4.0 * (d1.x * d1.x - d1.y * d1.y - d1.z * d1.z) * t6 + 2.0 * w * w * w * w -
           w * w * w * (d2.x - d2.y) * t;
}

inline double max_quadrature_constraint_residual(const InitialCurve& c, int samples = 400) {
    double m = 0;
    for (int i = 0; i <= samples; ++i) {
        const double t = c.t_min + (c.t_max - c.t_min) * i / samples;
        m = std::max(m, std::abs(quadrature_constraint_residual(c, t)));
    }
    return m;
}

// Reference curve used by the cross-check diagnostics and tests:
// ((3t + 4t^3)/8, (3t - 4t^3)/8, 3t^2/4) around t0 = 1.
inline InitialCurve reference_cubic_curve(double t_min = 0.5, double t_max = 1.5) {
    InitialCurve c;
    c.x1 = Smooth1D::poly({0.0, 3.0 / 8.0, 0.0, 0.5});
    c.x2 = Smooth1D::poly({0.0, 3.0 / 8.0, 0.0, -0.5});
    c.x3 = Smooth1D::poly({0.0, 0.0, 0.75});
    c.t_min = t_min;
    c.t_max = t_max;
    c.t0 = 1.0;
    return c;
}

}  // namespace darboux
