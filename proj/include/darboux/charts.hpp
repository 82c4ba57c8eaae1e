#pragma once

#include <cmath>
#include <string>

#include "darboux/linalg.hpp"
#include "darboux/so12.hpp"

namespace darboux {

// Point of the chart N1 = (p, p0, q, q0, v, x1..x3).
struct PQPoint {
    double p = 0, p0 = 1, q = 1, q0 = 1, v = 0;
    Vec3 x;
};

// Point of the chart N2 = (p, p0, q, q0, v, y1..y3), obtained from N1 by
// absorbing the cubic first-integral corrections into the fiber coordinates.
struct N2Point {
    double p = 0, p0 = 1, q = 1, q0 = 1, v = 0;
    Vec3 y;
};

// Point of the base chart on M x F: surface coordinates, group coordinates
// and the ambient position.
struct BaseFramePoint {
    double u = 1, v = 0;
    ACoords a;
    Vec3 x;
};

inline void require_chart(double p, double q, double p0, double q0, const char* who) {
    if (p == q) throw OutOfChartError(std::string(who) + ": requires p != q");
    if (p0 * q0 == 0.0) throw OutOfChartError(std::string(who) + ": requires p0 q0 != 0");
}

inline N2Point psi(const PQPoint& n1) {
    require_chart(n1.p, n1.q, n1.p0, n1.q0, "psi");
    const double w = 0.125 * n1.p0 * n1.p0 * n1.q0 * n1.q0;
    const double d = n1.p - n1.q;
    N2Point n2;
    n2.p = n1.p;
    n2.p0 = n1.p0;
    n2.q = n1.q;
    n2.q0 = n1.q0;
    n2.v = n1.v;
    n2.y.x = n1.x.x - w * d * (1.0 + n1.p * n1.q);
    n2.y.y = n1.x.y + w * d * (1.0 - n1.p * n1.q);
    n2.y.z = n1.x.z + w * (n1.p * n1.p - n1.q * n1.q);
    return n2;
}

inline PQPoint psi_inverse(const N2Point& n2) {
    require_chart(n2.p, n2.q, n2.p0, n2.q0, "psi_inverse");
    const double w = 0.125 * n2.p0 * n2.p0 * n2.q0 * n2.q0;
    const double d = n2.p - n2.q;
    PQPoint n1;
    n1.p = n2.p;
    n1.p0 = n2.p0;
    n1.q = n2.q;
    n1.q0 = n2.q0;
    n1.v = n2.v;
    n1.x.x = n2.y.x + w * d * (1.0 + n2.p * n2.q);
    n1.x.y = n2.y.y - w * d * (1.0 - n2.p * n2.q);
    n1.x.z = n2.y.z - w * (n2.p * n2.p - n2.q * n2.q);
    return n1;
}

// phi: (u, v, a, x) -> (p, p0, q, q0, v, x); u > 0, a1 > 0, a1 +- a2 != 0.
inline PQPoint phi(const BaseFramePoint& b) {
    const FirstIntegrals f = first_integrals(b.u, b.a);
    PQPoint n1;
    n1.p = f.p;
    n1.p0 = f.p0;
    n1.q = f.q;
    n1.q0 = f.q0;
    n1.v = b.v;
    n1.x = b.x;
    return n1;
}

inline BaseFramePoint phi_inverse(const PQPoint& n1) {
    require_chart(n1.p, n1.q, n1.p0, n1.q0, "phi_inverse");
    const double u = u_from_pq(n1.p, n1.p0, n1.q, n1.q0);
    if (!(u > 0)) throw OutOfChartError("phi_inverse: requires -p0 q0 (p - q) > 0");
    const double sum0 = n1.p0 + n1.q0;
    if (sum0 == 0.0) throw OutOfChartError("phi_inverse: requires p0 + q0 != 0");
    BaseFramePoint b;
    b.u = u;
    b.v = n1.v;
    b.a.a1 = sum0 * sum0 / (4.0 * u);
    b.a.a2 = (n1.q0 * n1.q0 - n1.p0 * n1.p0) / (4.0 * u);
    b.a.a3 = n1.p + 2.0 * u / (n1.p0 * sum0);
    b.x = n1.x;
    return b;
}

}  // namespace darboux
