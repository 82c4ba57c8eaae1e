#pragma once

#include <cmath>
#include <stdexcept>

#include "darboux/linalg.hpp"

namespace darboux {

struct OutOfChartError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rational chart on the identity component of SO(1,2); a1 > 0.
struct ACoords {
    double a1 = 1, a2 = 0, a3 = 0;
};

// The rational parametrization g(a1,a2,a3) of SO(1,2)^+, written out
// entrywise. Columns are the frame vectors (e1, e2, e3).
inline Mat3 so12_from_a(const ACoords& a) {
    if (!(a.a1 > 0)) throw OutOfChartError("so12_from_a: requires a1 > 0");
    const double a1 = a.a1, a2 = a.a2, a3 = a.a3;
    const double w = a2 * a3 + 1.0;
    Mat3 g;
    g(0, 0) = (w * w + a2 * a2 + a1 * a1 * (a3 * a3 + 1.0)) / (2.0 * a1);
    g(0, 1) = (w * w + a2 * a2 - a1 * a1 * (a3 * a3 + 1.0)) / (2.0 * a1);
    g(0, 2) = -a2 * (a3 * a3 + 1.0) - a3;
    g(1, 0) = (w * w - a2 * a2 + a1 * a1 * (a3 * a3 - 1.0)) / (2.0 * a1);
    g(1, 1) = (w * w - a2 * a2 - a1 * a1 * (a3 * a3 - 1.0)) / (2.0 * a1);
    g(1, 2) = -a2 * (a3 * a3 - 1.0) - a3;
    g(2, 0) = (-a3 * (a2 * a2 + a1 * a1) - a2) / a1;
    g(2, 1) = (-a3 * (a2 * a2 - a1 * a1) - a2) / a1;
    g(2, 2) = 2.0 * a2 * a3 + 1.0;
    return g;
}

// First integrals of the two characteristic systems of the embedding EDS
// for g0 = u^2 (dv^2 - du^2), as functions on the chart (u, a); u > 0.
struct FirstIntegrals {
    double p, p0, q, q0;
};

inline FirstIntegrals first_integrals(double u, const ACoords& a) {
    if (!(u > 0)) throw OutOfChartError("first_integrals: requires u > 0");
    if (!(a.a1 > 0)) throw OutOfChartError("first_integrals: requires a1 > 0");
    const double dm = a.a1 - a.a2, dp = a.a1 + a.a2;
    if (dm == 0.0 || dp == 0.0)
        throw OutOfChartError("first_integrals: requires a1 +- a2 != 0");
    const double su = std::sqrt(u), sa = std::sqrt(a.a1);
    FirstIntegrals f;
    f.p = (a.a3 * dm - 1.0) / dm;
    f.p0 = su * dm / sa;
    f.q = (a.a3 * dp + 1.0) / dp;
    f.q0 = su * dp / sa;
    return f;
}

// u recovered from the first integrals.
inline double u_from_pq(double p, double p0, double q, double q0) {
    return -0.5 * p0 * q0 * (p - q);
}

// The same group chart expressed through the first integrals; valid for
// p != q, p0 q0 != 0. Composing with first_integrals reproduces so12_from_a.
inline Mat3 so12_from_pq(double p, double q, double p0, double q0) {
    if (p == q) throw OutOfChartError("so12_from_pq: requires p != q");
    if (p0 * q0 == 0.0) throw OutOfChartError("so12_from_pq: requires p0 q0 != 0");
    const double d = p - q;
    const double P2 = p0 * p0, Q2 = q0 * q0;
    Mat3 g;
    g(0, 0) = -(P2 * (p * p + 1) + Q2 * (q * q + 1)) / (2 * p0 * q0 * d);
    g(0, 1) = (p * q + 1) / d;
    g(0, 2) = -(P2 * (p * p + 1) - Q2 * (q * q + 1)) / (2 * p0 * q0 * d);
    g(1, 0) = -(P2 * (p * p - 1) + Q2 * (q * q - 1)) / (2 * p0 * q0 * d);
    g(1, 1) = (p * q - 1) / d;
    g(1, 2) = -(P2 * (p * p - 1) - Q2 * (q * q - 1)) / (2 * p0 * q0 * d);
    g(2, 0) = (P2 * p + Q2 * q) / (p0 * q0 * d);
    g(2, 1) = -(p + q) / d;
    g(2, 2) = (P2 * p - Q2 * q) / (p0 * q0 * d);
    return g;
}

// Surface normal e3 (third frame column) in the (p,q) chart.
inline Vec3 normal_from_pq(double p, double q, double p0, double q0) {
    return so12_from_pq(p, q, p0, q0).column(2);
}

}  // namespace darboux
