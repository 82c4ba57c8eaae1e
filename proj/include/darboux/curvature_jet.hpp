#pragma once

#include <cmath>
#include <stdexcept>

#include "darboux/metric.hpp"

namespace darboux {

// Pointwise curvature data in the orthonormal coframe: K, k = |K|^(1/2),
// q = |K|^(-3/4), frame gradient components and covariant Hessians of both
// q and k, plus the inferred type sign epsilon = sign(K).
struct CurvatureJet {
    double K = 0, k = 0, q = 0;
    double q1 = 0, q2 = 0, q11 = 0, q12 = 0, q21 = 0, q22 = 0;
    double k1 = 0, k2 = 0, k11 = 0, k12 = 0, k21 = 0, k22 = 0;
    int epsilon = 1;
    bool lorentzian = false;
};

namespace detail {

// Coordinate partials of s(w) for w = |K| given partials of K; chain rule
// through w = sigma*K with sigma = sign(K).
struct PowerChain {
    double f, f_a, f_b, f_aa, f_ab, f_bb;
};

inline PowerChain power_of_absK(const ScalarPartials2& K, double expo, double K_a, double K_b,
                                double K_aa, double K_ab, double K_bb) {
    const double sigma = (K.f >= 0) ? 1.0 : -1.0;
    const double w = sigma * K.f;
    const double w_a = sigma * K_a, w_b = sigma * K_b;
    const double w_aa = sigma * K_aa, w_ab = sigma * K_ab, w_bb = sigma * K_bb;
    const double p = std::pow(w, expo);
    const double p1 = expo * std::pow(w, expo - 1.0);
    const double p2 = expo * (expo - 1.0) * std::pow(w, expo - 2.0);
    PowerChain r;
    r.f = p;
    r.f_a = p1 * w_a;
    r.f_b = p1 * w_b;
    r.f_aa = p2 * w_a * w_a + p1 * w_aa;
    r.f_ab = p2 * w_a * w_b + p1 * w_ab;
    r.f_bb = p2 * w_b * w_b + p1 * w_bb;
    return r;
}

}  // namespace detail

// Covariant first and second derivatives of q and k at a point, computed in
// the orthonormal coframe of the metric. Throws FlatPointError when
// |K| <= 1e-12 (the integrability conditions are undefined there).
inline CurvatureJet curvature_jet(const OrthogonalMetric2D& m, double u, double v,
                                  double fd_step = 1e-5) {
    const ScalarPartials2 Kp = m.curvature_partials(u, v, fd_step);
    if (std::abs(Kp.f) <= 1e-12)
        throw FlatPointError("curvature_jet: |K| <= 1e-12, conditions undefined at flat point");

    const OrthogonalMetric2D::FramePoint f = m.frame_at(u, v);

    // Map (u,v) partials onto the (alpha,beta) frame coordinates.
    const double K_a = f.alpha_is_u ? Kp.fu : Kp.fv;
    const double K_b = f.alpha_is_u ? Kp.fv : Kp.fu;
    const double K_aa = f.alpha_is_u ? Kp.fuu : Kp.fvv;
    const double K_bb = f.alpha_is_u ? Kp.fvv : Kp.fuu;
    const double K_ab = Kp.fuv;

    CurvatureJet jet;
    jet.K = Kp.f;
    jet.epsilon = (Kp.f > 0) ? 1 : -1;
    jet.lorentzian = m.lorentzian();

    const auto assemble = [&](const detail::PowerChain& s, double& val, double& c1, double& c2,
                              double& c11, double& c12, double& c21, double& c22) {
        val = s.f;
        c1 = s.f_a / f.A;
        c2 = s.f_b / f.B;
        const double d_a_c1 = (s.f_aa * f.A - s.f_a * f.A_a) / (f.A * f.A);
        const double d_b_c1 = (s.f_ab * f.A - s.f_a * f.A_b) / (f.A * f.A);
        const double d_a_c2 = (s.f_ab * f.B - s.f_b * f.B_a) / (f.B * f.B);
        const double d_b_c2 = (s.f_bb * f.B - s.f_b * f.B_b) / (f.B * f.B);
        const double rot = jet.lorentzian ? -1.0 : 1.0;  // eta^2_1 = -+ eta^1_2
        c11 = (d_a_c1 + rot * c2 * f.P) / f.A;
        c12 = (d_b_c1 + rot * c2 * f.Q) / f.B;
        c21 = (d_a_c2 - c1 * f.P) / f.A;
        c22 = (d_b_c2 - c1 * f.Q) / f.B;
    };

    const auto qc = detail::power_of_absK(Kp, -0.75, K_a, K_b, K_aa, K_ab, K_bb);
    assemble(qc, jet.q, jet.q1, jet.q2, jet.q11, jet.q12, jet.q21, jet.q22);
    const auto kc = detail::power_of_absK(Kp, 0.5, K_a, K_b, K_aa, K_ab, K_bb);
    assemble(kc, jet.k, jet.k1, jet.k2, jet.k11, jet.k12, jet.k21, jet.k22);
    return jet;
}

// Constant rotation of the orthonormal coframe (Riemannian only): the
// gradient transforms as a covector and the Hessian by conjugation.
inline CurvatureJet rotate_frame(const CurvatureJet& j, double theta) {
    if (j.lorentzian)
        throw std::invalid_argument("rotate_frame: rotations apply to the Riemannian frame only");
    const double c = std::cos(theta), s = std::sin(theta);
    CurvatureJet r = j;
    r.q1 = c * j.q1 + s * j.q2;
    r.q2 = -s * j.q1 + c * j.q2;
    r.k1 = c * j.k1 + s * j.k2;
    r.k2 = -s * j.k1 + c * j.k2;
    auto conj = [&](double h11, double h12, double h21, double h22, double& o11, double& o12,
                    double& o21, double& o22) {
        o11 = c * (c * h11 + s * h21) + s * (c * h12 + s * h22);
        o12 = -s * (c * h11 + s * h21) + c * (c * h12 + s * h22);
        o21 = c * (-s * h11 + c * h21) + s * (-s * h12 + c * h22);
        o22 = -s * (-s * h11 + c * h21) + c * (-s * h12 + c * h22);
    };
    conj(j.q11, j.q12, j.q21, j.q22, r.q11, r.q12, r.q21, r.q22);
    conj(j.k11, j.k12, j.k21, j.k22, r.k11, r.k12, r.k21, r.k22);
    return r;
}

}  // namespace darboux
