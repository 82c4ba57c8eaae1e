#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace darboux {

using OdeState = std::vector<double>;
using OdeRhs = std::function<OdeState(double, const OdeState&)>;

struct OdeConfig {
    enum class Method { rk4_fixed, rk45_adaptive };
    Method method = Method::rk45_adaptive;
    double fixed_step = 1e-3;     // rk4 only
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    long max_steps = 200000;
    // Cap on |step| (0 = none). Dense output interpolates cubically between
    // accepted steps, so callers needing tight inter-node accuracy cap it.
    double max_step = 0.0;
};

enum class OdeStatus { ok, step_underflow, max_steps_exceeded, non_finite };

// Dense trajectory: accepted nodes with derivatives; evaluation anywhere in
// [t0,t1] by cubic Hermite interpolation between neighbouring nodes.
class Trajectory {
  public:
    struct Node {
        double t;
        OdeState y;
        OdeState dy;
    };

    std::vector<Node> nodes;
    OdeStatus status = OdeStatus::ok;

    bool ok() const { return status == OdeStatus::ok; }
    double t_front() const { return nodes.front().t; }
    double t_back() const { return nodes.back().t; }
    const OdeState& back() const { return nodes.back().y; }

    OdeState at(double t) const {
        if (nodes.empty()) throw std::runtime_error("Trajectory::at on empty trajectory");
        if (nodes.size() == 1) return nodes.front().y;
        const bool fwd = nodes.back().t >= nodes.front().t;
        std::size_t lo = 0, hi = nodes.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            const bool left = fwd ? (t < nodes[mid].t) : (t > nodes[mid].t);
            if (left) hi = mid; else lo = mid;
        }
        const Node& a = nodes[lo];
        const Node& b = nodes[hi];
        const double h = b.t - a.t;
        if (h == 0.0) return a.y;
        const double s = (t - a.t) / h;
        const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
        const double h10 = s * (1 - s) * (1 - s);
        const double h01 = s * s * (3 - 2 * s);
        const double h11 = s * s * (s - 1);
        OdeState r(a.y.size());
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] = h00 * a.y[i] + h10 * h * a.dy[i] + h01 * b.y[i] + h11 * h * b.dy[i];
        return r;
    }
};

namespace detail {

inline bool finite(const OdeState& y) {
    for (double v : y)
        if (!std::isfinite(v)) return false;
    return true;
}

inline OdeState axpy(const OdeState& y, double h, const OdeState& k) {
    OdeState r(y.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = y[i] + h * k[i];
    return r;
}

}  // namespace detail

// Integrates y' = rhs(t, y) from (t0, y0) to t1 (either direction).
// Adaptive mode is Dormand-Prince 5(4) with PI-free step control; failures
// return the samples accumulated so far with a non-ok status.
inline Trajectory ode_solve(const OdeRhs& rhs, double t0, OdeState y0, double t1,
                            const OdeConfig& cfg = OdeConfig{}) {
    Trajectory traj;
    OdeState dy0 = rhs(t0, y0);
    if (!detail::finite(y0) || !detail::finite(dy0)) {
        traj.status = OdeStatus::non_finite;
        return traj;
    }
    traj.nodes.push_back({t0, y0, dy0});
    if (t0 == t1) return traj;
    const double dir = (t1 > t0) ? 1.0 : -1.0;
    const double span = std::abs(t1 - t0);

    if (cfg.method == OdeConfig::Method::rk4_fixed) {
        const long n = std::max<long>(1, std::lround(span / cfg.fixed_step));
        const double h = dir * span / static_cast<double>(n);
        double t = t0;
        OdeState y = std::move(y0);
        for (long i = 0; i < n; ++i) {
            const OdeState k1 = rhs(t, y);
            const OdeState k2 = rhs(t + h / 2, detail::axpy(y, h / 2, k1));
            const OdeState k3 = rhs(t + h / 2, detail::axpy(y, h / 2, k2));
            const OdeState k4 = rhs(t + h, detail::axpy(y, h, k3));
            for (std::size_t j = 0; j < y.size(); ++j)
                y[j] += h / 6.0 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
            t = t0 + (i + 1) * h;
            if (!detail::finite(y)) {
                traj.status = OdeStatus::non_finite;
                return traj;
            }
            traj.nodes.push_back({t, y, rhs(t, y)});
        }
        return traj;
    }

    // Dormand-Prince coefficients.
    static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    double t = t0;
    OdeState y = std::move(y0);
    OdeState k1 = dy0;
    double h = dir * std::min(span, std::max(1e-6, span / 100.0));
    if (cfg.max_step > 0.0 && std::abs(h) > cfg.max_step) h = dir * cfg.max_step;
    const double hmin = span * 1e-14;
    long steps = 0;

    while (dir * (t1 - t) > 0) {
        if (++steps > cfg.max_steps) {
            traj.status = OdeStatus::max_steps_exceeded;
            return traj;
        }
        if (cfg.max_step > 0.0 && std::abs(h) > cfg.max_step) h = dir * cfg.max_step;
        if (dir * (t + h) > dir * t1) h = t1 - t;

        const OdeState k2 = rhs(t + c2 * h, detail::axpy(y, h * a21, k1));
        OdeState ytmp(y.size());
        for (std::size_t i = 0; i < y.size(); ++i)
            ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        const OdeState k3 = rhs(t + c3 * h, ytmp);
        for (std::size_t i = 0; i < y.size(); ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        const OdeState k4 = rhs(t + c4 * h, ytmp);
        for (std::size_t i = 0; i < y.size(); ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        const OdeState k5 = rhs(t + c5 * h, ytmp);
        for (std::size_t i = 0; i < y.size(); ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                  a65 * k5[i]);
        const OdeState k6 = rhs(t + h, ytmp);
        OdeState y5(y.size());
        for (std::size_t i = 0; i < y.size(); ++i)
            y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        const OdeState k7 = rhs(t + h, y5);

        if (!detail::finite(y5) || !detail::finite(k7)) {
            h *= 0.5;
            if (std::abs(h) < hmin) {
                traj.status = OdeStatus::non_finite;
                return traj;
            }
            continue;
        }

        double err = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                   e6 * k6[i] + e7 * k7[i]);
            const double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
            err = std::max(err, std::abs(ei) / sc);
        }

        if (err <= 1.0) {
            t += h;
            y = std::move(y5);
            k1 = k7;  // FSAL
            traj.nodes.push_back({t, y, k1});
        }
        const double fac = (err > 0) ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(fac, 0.2, 5.0);
        if (std::abs(h) < hmin) {
            traj.status = OdeStatus::step_underflow;
            return traj;
        }
    }
    return traj;
}

}  // namespace darboux
