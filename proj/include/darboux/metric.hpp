#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "darboux/finite_diff.hpp"
#include "darboux/jet.hpp"
#include "darboux/smooth.hpp"

namespace darboux {

struct DomainRect {
    double u_min = 0, u_max = 1, v_min = 0, v_max = 1;

    bool contains(double u, double v) const {
        return u >= u_min && u <= u_max && v >= v_min && v <= v_max;
    }
    double u_mid() const { return 0.5 * (u_min + u_max); }
    double v_mid() const { return 0.5 * (v_min + v_max); }
};

struct DegenerateMetricError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FlatPointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Value and coordinate partials of a scalar of (u,v) up to second order.
struct ScalarPartials2 {
    double f = 0, fu = 0, fv = 0, fuu = 0, fuv = 0, fvv = 0;
};

// Orthogonal-coordinate 2-metric  sign_u Eu^2 du^2 + sign_v Gv^2 dv^2.
// Allowed sign pairs: (+,+) Riemannian, (+,-) and (-,+) Lorentzian.
// The orthonormal coframe puts eta^1 on the positive coordinate direction:
//   Riemannian / (+,-):  eta^1 = Eu du,  eta^2 = Gv dv
//   (-,+):               eta^1 = Gv dv,  eta^2 = Eu du
class OrthogonalMetric2D {
  public:
    OrthogonalMetric2D(Smooth2D Eu, Smooth2D Gv, int sign_u, int sign_v, DomainRect dom,
                       bool coeffs_u_only = true)
        : Eu_(std::move(Eu)),
          Gv_(std::move(Gv)),
          sign_u_(sign_u),
          sign_v_(sign_v),
          dom_(dom),
          u_only_(coeffs_u_only) {
        if (!((sign_u == 1 && sign_v == 1) || (sign_u == 1 && sign_v == -1) ||
              (sign_u == -1 && sign_v == 1)))
            throw std::invalid_argument("OrthogonalMetric2D: signs must be (+,+), (+,-) or (-,+)");
        validate_nonvanishing();
    }

    bool lorentzian() const { return sign_u_ * sign_v_ < 0; }
    int sign_u() const { return sign_u_; }
    int sign_v() const { return sign_v_; }
    const DomainRect& domain() const { return dom_; }
    const Smooth2D& Eu() const { return Eu_; }
    const Smooth2D& Gv() const { return Gv_; }
    bool coeffs_u_only() const { return u_only_; }

    // Metric components in the (u,v) coordinates.
    double g_uu(double u, double v) const {
        const double e = Eu_.value(u, v);
        return sign_u_ * e * e;
    }
    double g_vv(double u, double v) const {
        const double g = Gv_.value(u, v);
        return sign_v_ * g * g;
    }

    // eta^1 carried by u iff true (see class comment).
    bool alpha_is_u() const { return sign_u_ > 0; }

    // Coframe/connection data at a point, expressed in the (alpha,beta)
    // coordinate order of the orthonormal frame.
    struct FramePoint {
        double A, B;              // eta^1 = A d(alpha), eta^2 = B d(beta)
        double A_a, A_b, B_a, B_b;  // partials wrt alpha, beta
        double P, Q;              // eta^1_2 = P d(alpha) + Q d(beta)
        bool alpha_is_u;
        bool lorentzian;
    };

    FramePoint frame_at(double u, double v) const {
        FramePoint f{};
        f.alpha_is_u = alpha_is_u();
        f.lorentzian = lorentzian();
        const Smooth2D& Af = f.alpha_is_u ? Eu_ : Gv_;
        const Smooth2D& Bf = f.alpha_is_u ? Gv_ : Eu_;
        // partial(i,j) is wrt (u,v); map to (alpha,beta).
        auto pa = [&](const Smooth2D& s, int da, int db) {
            return f.alpha_is_u ? s.partial(da, db, u, v) : s.partial(db, da, u, v);
        };
        f.A = pa(Af, 0, 0);
        f.B = pa(Bf, 0, 0);
        if (std::abs(f.A) < 1e-12 || std::abs(f.B) < 1e-12)
            throw DegenerateMetricError("metric coefficient vanishes at sample point");
        f.A_a = pa(Af, 1, 0);
        f.A_b = pa(Af, 0, 1);
        f.B_a = pa(Bf, 1, 0);
        f.B_b = pa(Bf, 0, 1);
        f.P = f.A_b / f.B;
        f.Q = (f.lorentzian ? 1.0 : -1.0) * f.B_a / f.A;
        return f;
    }

    // Gauss curvature from the structure equations:
    //   Riemannian:  d eta^1_2 =  K eta^1 ^ eta^2
    //   Lorentzian:  d eta^1_2 = -K eta^1 ^ eta^2
    double gauss_curvature(double u, double v) const {
        if (u_only_) return curvature_jet_u(u, v).value();
        const FramePoint f = frame_at(u, v);
        auto pa = [&](const Smooth2D& s, int da, int db) {
            const Smooth2D& ss = s;
            return f.alpha_is_u ? ss.partial(da, db, u, v) : ss.partial(db, da, u, v);
        };
        const Smooth2D& Af = f.alpha_is_u ? Eu_ : Gv_;
        const Smooth2D& Bf = f.alpha_is_u ? Gv_ : Eu_;
        const double A_bb = pa(Af, 0, 2), B_aa = pa(Bf, 2, 0);
        // d/dalpha (B_a / A), d/dbeta (A_b / B)
        const double dA = (B_aa * f.A - f.B_a * f.A_a) / (f.A * f.A);
        const double dB = (A_bb * f.B - f.A_b * f.B_b) / (f.B * f.B);
        if (lorentzian()) return (dB - dA) / (f.A * f.B);
        return -(dA + dB) / (f.A * f.B);
    }

    // Taylor series of K in u at fixed v; exact when coefficients are
    // closed forms of u alone.
    Jet6 curvature_jet_u(double u, double v) const {
        const Jet6 E = Eu_.jet_u(u, v);
        const Jet6 G = Gv_.jet_u(u, v);
        const Jet6 D = (G.derivative_series() / E).derivative_series();
        const double sign = (sign_u_ < 0) ? 1.0 : -1.0;  // (-,+) flips relative to the others
        return sign * (D / (E * G));
    }

    // K and its coordinate partials up to order 2. Exact route for
    // u-only coefficients; nested central differences otherwise
    // (fd_step controls the first-difference step, second differences
    // use 20x that).
    ScalarPartials2 curvature_partials(double u, double v, double fd_step = 1e-5) const {
        ScalarPartials2 r;
        if (u_only_) {
            const Jet6 K = curvature_jet_u(u, v);
            r.f = K.value();
            r.fu = K.derivative(1);
            r.fuu = K.derivative(2);
            return r;
        }
        const double h1 = fd_step * std::max(1.0, std::max(std::abs(u), std::abs(v)));
        const double h2 = 20.0 * h1;
        auto K = [&](double uu, double vv) { return gauss_curvature(uu, vv); };
        r.f = K(u, v);
        r.fu = (K(u + h1, v) - K(u - h1, v)) / (2 * h1);
        r.fv = (K(u, v + h1) - K(u, v - h1)) / (2 * h1);
        r.fuu = (K(u + h2, v) - 2 * r.f + K(u - h2, v)) / (h2 * h2);
        r.fvv = (K(u, v + h2) - 2 * r.f + K(u, v - h2)) / (h2 * h2);
        r.fuv = (K(u + h2, v + h2) - K(u + h2, v - h2) - K(u - h2, v + h2) + K(u - h2, v - h2)) /
                (4 * h2 * h2);
        return r;
    }

  private:
    void validate_nonvanishing() const {
        const int n = 12;
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                const double u = dom_.u_min + (dom_.u_max - dom_.u_min) * i / n;
                const double v = dom_.v_min + (dom_.v_max - dom_.v_min) * j / n;
                if (std::abs(Eu_.value(u, v)) < 1e-12 || std::abs(Gv_.value(u, v)) < 1e-12)
                    throw DegenerateMetricError("metric coefficient vanishes on declared domain");
            }
    }

    Smooth2D Eu_, Gv_;
    int sign_u_, sign_v_;
    DomainRect dom_;
    bool u_only_;
};

}  // namespace darboux
