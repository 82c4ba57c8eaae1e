#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "darboux/curvature_jet.hpp"
#include "darboux/metric.hpp"

namespace darboux {

struct MixedTypeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Residuals of the integrability conditions on the Hessian of q:
//   Riemannian:  q11 = q22 = 3 eps q^(-1/3),  q12 = q21 = 0
//   Lorentzian:  q11 = -q22 = 3 eps q^(-1/3), q12 = q21 = 0
inline std::array<double, 4> q_condition_residuals(const CurvatureJet& j) {
    const double target = 3.0 * j.epsilon * std::pow(j.q, -1.0 / 3.0);
    if (j.lorentzian) return {j.q11 - target, j.q22 + target, j.q12, j.q21};
    return {j.q11 - target, j.q22 - target, j.q12, j.q21};
}

// The same conditions expressed through k = |K|^(1/2); equivalent to the
// q-form and used as a cross-check.
inline std::array<double, 4> k_condition_residuals(const CurvatureJet& j) {
    const double k3 = -2.0 * j.epsilon * j.k * j.k * j.k;
    const double r11 = j.k11 - (k3 + 2.5 * j.k1 * j.k1 / j.k);
    const double r12 = j.k12 - 2.5 * j.k1 * j.k2 / j.k;
    const double r21 = j.k21 - 2.5 * j.k1 * j.k2 / j.k;
    const double r22 = j.lorentzian ? j.k22 - (-k3 + 2.5 * j.k2 * j.k2 / j.k)
                                    : j.k22 - (k3 + 2.5 * j.k2 * j.k2 / j.k);
    return {r11, r12, r21, r22};
}

inline std::array<double, 4> k_condition_residuals(const OrthogonalMetric2D& m, double u, double v,
                                                   double fd_step = 1e-5) {
    return k_condition_residuals(curvature_jet(m, u, v, fd_step));
}

struct DarbouxSample {
    double u, v;
    std::array<double, 4> residuals;  // q-form
    double max_abs;
};

struct DarbouxReport {
    int epsilon = 1;
    bool lorentzian = false;
    double tol = 1e-4;
    double fd_step = 1e-5;
    int grid_nu = 0, grid_nv = 0;
    std::vector<DarbouxSample> samples;
    double max_residual = 0;
    bool verdict = false;
};

// Evaluates the case-appropriate conditions on an interior sample grid.
// Verdict is true iff every sample residual is below tol. Throws
// MixedTypeError if sign(K) changes across the grid and FlatPointError at
// flat samples.
inline DarbouxReport check_integrability(const OrthogonalMetric2D& m, int grid_nu, int grid_nv,
                                         double tol = 1e-4, double fd_step = 1e-5) {
    if (grid_nu < 2 || grid_nv < 2) throw std::invalid_argument("check_integrability: grid must be >= 2x2");
    if (tol <= 0) throw std::invalid_argument("check_integrability: tol must be positive");
    DarbouxReport rep;
    rep.tol = tol;
    rep.fd_step = fd_step;
    rep.grid_nu = grid_nu;
    rep.grid_nv = grid_nv;
    rep.lorentzian = m.lorentzian();
    const DomainRect& d = m.domain();
    // Interior sampling: margin keeps the differencing stencil inside.
    const double mu = 0.02 * (d.u_max - d.u_min);
    const double mv = 0.02 * (d.v_max - d.v_min);
    int eps_seen = 0;
    for (int i = 0; i < grid_nu; ++i) {
        for (int j = 0; j < grid_nv; ++j) {
            const double u =
                d.u_min + mu + (d.u_max - d.u_min - 2 * mu) * i / std::max(1, grid_nu - 1);
            const double v =
                d.v_min + mv + (d.v_max - d.v_min - 2 * mv) * j / std::max(1, grid_nv - 1);
            const CurvatureJet jet = curvature_jet(m, u, v, fd_step);
            if (eps_seen == 0) {
                eps_seen = jet.epsilon;
                rep.epsilon = jet.epsilon;
            } else if (jet.epsilon != eps_seen) {
                throw MixedTypeError("check_integrability: sign of K changes across the grid");
            }
            DarbouxSample s;
            s.u = u;
            s.v = v;
            s.residuals = q_condition_residuals(jet);
            s.max_abs = 0;
            for (double r : s.residuals) s.max_abs = std::max(s.max_abs, std::abs(r));
            rep.max_residual = std::max(rep.max_residual, s.max_abs);
            rep.samples.push_back(s);
        }
    }
    rep.verdict = rep.max_residual < tol;
    return rep;
}

}  // namespace darboux
