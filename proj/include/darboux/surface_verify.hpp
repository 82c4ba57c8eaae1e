#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "darboux/linalg.hpp"
#include "darboux/metric.hpp"

namespace darboux {

// Sampled immersion: parameter grid, ambient positions, optional frame and
// chart channels, and per-vertex verification residual channels.
struct SurfaceMesh {
    std::string axis1 = "u", axis2 = "v";
    std::vector<double> axis1_values, axis2_values;
    std::vector<Vec3> positions;   // row-major, index = i * n2 + j
    std::vector<Mat3> frames;      // optional; empty when absent
    std::vector<double> u_chart, v_chart;  // optional surface-chart channels
    std::vector<double> res_isom, res_K;   // verification channels
    Signature sig = Signature::lorentz();

    int n1() const { return static_cast<int>(axis1_values.size()); }
    int n2() const { return static_cast<int>(axis2_values.size()); }
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n2()) +
               static_cast<std::size_t>(j);
    }
    bool has_frames() const { return !frames.empty(); }
    std::size_t vertex_count() const { return positions.size(); }
};

using PositionMap = std::function<Vec3(double, double)>;
using FrameMap = std::function<Mat3(double, double)>;
using ChartMap = std::function<std::array<double, 2>(double, double)>;  // (u,v)
// Target first fundamental form (g11, g12, g22) in the mesh parameters.
using TargetForm = std::function<std::array<double, 3>(double, double)>;

// Induced metric components at a parameter point by central differences.
inline std::array<double, 3> induced_form(const PositionMap& pos, const Signature& sig, double a,
                                          double b, double h) {
    const Vec3 xa = (pos(a + h, b) - pos(a - h, b)) / (2.0 * h);
    const Vec3 xb = (pos(a, b + h) - pos(a, b - h)) / (2.0 * h);
    return {xa.dot(xa, sig), xa.dot(xb, sig), xb.dot(xb, sig)};
}

// First-fundamental-form residuals |I - target| (componentwise max is the
// isometry residual channel).
inline std::array<double, 3> isometry_residuals(const PositionMap& pos, const Signature& sig,
                                                const TargetForm& target, double a, double b,
                                                double h) {
    const auto I = induced_form(pos, sig, a, b, h);
    const auto T = target(a, b);
    return {std::abs(I[0] - T[0]), std::abs(I[1] - T[1]), std::abs(I[2] - T[2])};
}

// Gauss curvature of a 2-metric from its components and their coordinate
// partials (valid in both signatures; EG - F^2 may be negative).
inline double brioschi_curvature(double E, double F, double G, double Ea, double Eb, double Fa,
                                 double Fb, double Ga, double Gb, double Ebb, double Fab,
                                 double Gaa) {
    const double m1[3][3] = {{-0.5 * Ebb + Fab - 0.5 * Gaa, 0.5 * Ea, Fa - 0.5 * Eb},
                             {Fb - 0.5 * Ga, E, F},
                             {0.5 * Gb, F, G}};
    const double m2[3][3] = {{0.0, 0.5 * Eb, 0.5 * Ga}, {0.5 * Eb, E, F}, {0.5 * Ga, F, G}};
    auto det3 = [](const double m[3][3]) {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    const double den = E * G - F * F;
    return (det3(m1) - det3(m2)) / (den * den);
}

// Image Gauss curvature at a parameter point: the induced metric is sampled
// on a stencil and fed through the Brioschi formula. h1 differentiates the
// position map, h2 the induced components.
inline double image_curvature(const PositionMap& pos, const Signature& sig, double a, double b,
                              double h1, double h2) {
    auto EFG = [&](double aa, double bb) { return induced_form(pos, sig, aa, bb, h1); };
    const auto c = EFG(a, b);
    const auto pa = EFG(a + h2, b), ma = EFG(a - h2, b);
    const auto pb = EFG(a, b + h2), mb = EFG(a, b - h2);
    const auto pp = EFG(a + h2, b + h2), pm = EFG(a + h2, b - h2);
    const auto mp = EFG(a - h2, b + h2), mm = EFG(a - h2, b - h2);
    auto d1a = [&](int k) { return (pa[k] - ma[k]) / (2 * h2); };
    auto d1b = [&](int k) { return (pb[k] - mb[k]) / (2 * h2); };
    auto d2aa = [&](int k) { return (pa[k] - 2 * c[k] + ma[k]) / (h2 * h2); };
    auto d2bb = [&](int k) { return (pb[k] - 2 * c[k] + mb[k]) / (h2 * h2); };
    auto d2ab = [&](int k) { return (pp[k] - pm[k] - mp[k] + mm[k]) / (4 * h2 * h2); };
    return brioschi_curvature(c[0], c[1], c[2], d1a(0), d1b(0), d1a(1), d1b(1), d1a(2), d1b(2),
                              d2bb(0), d2ab(1), d2aa(2));
}

// Residuals of the four contact forms of the embedding system, evaluated on
// both parameter directions by finite differences of the frame field:
//   theta0 = w^3, theta1 = w^1 - eta^1, theta2 = w^2 - eta^2,
//   theta3 = w^1_2 - eta^1_2.
// Returns the max |.| over the two directions for each form.
inline std::array<double, 4> pfaffian_residuals(const PositionMap& pos, const FrameMap& frame,
                                                const ChartMap& uv, const OrthogonalMetric2D& m,
                                                double a, double b, double h) {
    const Signature sig = m.lorentzian() ? Signature::lorentz() : Signature::euclidean();
    std::array<double, 4> out{0, 0, 0, 0};
    const Mat3 fr = frame(a, b);
    const auto chart = uv(a, b);
    const auto fp = m.frame_at(chart[0], chart[1]);

    for (int dir = 0; dir < 2; ++dir) {
        const double da = (dir == 0) ? h : 0.0;
        const double db = (dir == 0) ? 0.0 : h;
        const Vec3 dpos = (pos(a + da, b + db) - pos(a - da, b - db)) / (2.0 * h);
        const Mat3 frp = frame(a + da, b + db), frm = frame(a - da, b - db);
        const Vec3 de2 = (frp.column(1) - frm.column(1)) / (2.0 * h);
        const auto uvp = uv(a + da, b + db), uvm = uv(a - da, b - db);
        const double du = (uvp[0] - uvm[0]) / (2.0 * h);
        const double dv = (uvp[1] - uvm[1]) / (2.0 * h);

        const double w1 = sig.diag(0) * fr.column(0).dot(dpos, sig);
        const double w2 = sig.diag(1) * fr.column(1).dot(dpos, sig);
        const double w3 = sig.diag(2) * fr.column(2).dot(dpos, sig);
        const double w12 = sig.diag(0) * fr.column(0).dot(de2, sig);

        const double dalpha = fp.alpha_is_u ? du : dv;
        const double dbeta = fp.alpha_is_u ? dv : du;
        const double eta1 = fp.A * dalpha;
        const double eta2 = fp.B * dbeta;
        const double eta12 = fp.P * dalpha + fp.Q * dbeta;

        out[0] = std::max(out[0], std::abs(w3));
        out[1] = std::max(out[1], std::abs(w1 - eta1));
        out[2] = std::max(out[2], std::abs(w2 - eta2));
        out[3] = std::max(out[3], std::abs(w12 - eta12));
    }
    return out;
}

struct VerifySummary {
    double max_isom = 0, mean_isom = 0;
    double max_K = 0, mean_K = 0;
    int flagged_vertices = 0;  // degenerate tangent plane or non-finite data
};

// Curvature residuals are scaled by max(1, |K_target|): the closed-form K
// blows up like u^-4 toward the degenerate axis, where only the relative
// error is meaningful.
inline double curvature_residual(double k_num, double k_target) {
    return std::abs(k_num - k_target) / std::max(1.0, std::abs(k_target));
}

// Fills the residual channels of a mesh from callable evaluators; used by
// the construction pipelines, which know their immersions in closed form.
inline VerifySummary verify_against_target(SurfaceMesh& mesh, const PositionMap& pos,
                                           const TargetForm& target,
                                           const std::function<double(double, double)>& target_K,
                                           double h1 = 1e-5, double h2 = 2e-3) {
    VerifySummary s;
    const std::size_t n = mesh.vertex_count();
    mesh.res_isom.assign(n, 0.0);
    mesh.res_K.assign(n, 0.0);
    double sum_isom = 0, sum_K = 0;
    for (int i = 0; i < mesh.n1(); ++i) {
        for (int j = 0; j < mesh.n2(); ++j) {
            const double a = mesh.axis1_values[static_cast<std::size_t>(i)];
            const double b = mesh.axis2_values[static_cast<std::size_t>(j)];
            const std::size_t idx = mesh.index(i, j);
            const auto res = isometry_residuals(pos, mesh.sig, target, a, b, h1);
            const double ri = std::max({res[0], res[1], res[2]});
            const double kn = image_curvature(pos, mesh.sig, a, b, h1, h2);
            const double rk = curvature_residual(kn, target_K(a, b));
            if (!std::isfinite(ri) || !std::isfinite(rk)) {
                ++s.flagged_vertices;
                mesh.res_isom[idx] = std::numeric_limits<double>::quiet_NaN();
                mesh.res_K[idx] = std::numeric_limits<double>::quiet_NaN();
                continue;
            }
            mesh.res_isom[idx] = ri;
            mesh.res_K[idx] = rk;
            s.max_isom = std::max(s.max_isom, ri);
            s.max_K = std::max(s.max_K, rk);
            sum_isom += ri;
            sum_K += rk;
        }
    }
    const auto counted = static_cast<double>(n - static_cast<std::size_t>(s.flagged_vertices));
    if (counted > 0) {
        s.mean_isom = sum_isom / counted;
        s.mean_K = sum_K / counted;
    }
    return s;
}

// Grid-difference verification of a stored mesh over its own (u,v)-style
// parameter grid against an orthogonal metric: positions are interpolated
// nowhere, derivatives use neighbouring vertices. Uniform grids get
// fourth-order stencils; vertices whose stencil would leave the grid are
// flagged NaN and excluded from the summary.
inline VerifySummary verify_embedding(SurfaceMesh& mesh, const OrthogonalMetric2D& metric,
                                      bool with_curvature = true) {
    VerifySummary s;
    const int n1 = mesh.n1(), n2 = mesh.n2();
    const std::size_t n = mesh.vertex_count();
    mesh.res_isom.assign(n, std::numeric_limits<double>::quiet_NaN());
    if (with_curvature) mesh.res_K.assign(n, std::numeric_limits<double>::quiet_NaN());
    double sum_isom = 0, sum_K = 0;
    long counted = 0, counted_K = 0;

    auto uniform_step = [](const std::vector<double>& ax) -> double {
        const double h = ax[1] - ax[0];
        for (std::size_t k = 1; k + 1 < ax.size(); ++k)
            if (std::abs(ax[k + 1] - ax[k] - h) > 1e-10 * std::max(1.0, std::abs(h))) return 0.0;
        return h;
    };
    const double ha = uniform_step(mesh.axis1_values);
    const double hb = uniform_step(mesh.axis2_values);
    const bool fourth = (ha != 0.0 && hb != 0.0);

    auto P = [&](int i, int j) { return mesh.positions[mesh.index(i, j)]; };
    // First derivatives of the position along the two axes.
    auto d_pos = [&](int i, int j) -> std::array<Vec3, 2> {
        if (fourth && i >= 2 && j >= 2 && i + 2 < n1 && j + 2 < n2) {
            const Vec3 xa = (1.0 / (12 * ha)) * (P(i - 2, j) - 8.0 * P(i - 1, j) +
                                                 8.0 * P(i + 1, j) - P(i + 2, j));
            const Vec3 xb = (1.0 / (12 * hb)) * (P(i, j - 2) - 8.0 * P(i, j - 1) +
                                                 8.0 * P(i, j + 1) - P(i, j + 2));
            return {xa, xb};
        }
        const double da = mesh.axis1_values[static_cast<std::size_t>(i + 1)] -
                          mesh.axis1_values[static_cast<std::size_t>(i - 1)];
        const double db = mesh.axis2_values[static_cast<std::size_t>(j + 1)] -
                          mesh.axis2_values[static_cast<std::size_t>(j - 1)];
        return {(P(i + 1, j) - P(i - 1, j)) / da, (P(i, j + 1) - P(i, j - 1)) / db};
    };
    auto EFG = [&](int i, int j) -> std::array<double, 3> {
        const auto d = d_pos(i, j);
        return {d[0].dot(d[0], mesh.sig), d[0].dot(d[1], mesh.sig), d[1].dot(d[1], mesh.sig)};
    };

    const int margin1 = fourth ? 2 : 1;
    for (int i = margin1; i + margin1 < n1; ++i) {
        for (int j = margin1; j + margin1 < n2; ++j) {
            const std::size_t idx = mesh.index(i, j);
            const double u = mesh.u_chart.empty() ? mesh.axis1_values[static_cast<std::size_t>(i)]
                                                  : mesh.u_chart[idx];
            const double v = mesh.v_chart.empty() ? mesh.axis2_values[static_cast<std::size_t>(j)]
                                                  : mesh.v_chart[idx];
            const auto I = EFG(i, j);
            const double ri = std::max({std::abs(I[0] - metric.g_uu(u, v)), std::abs(I[1]),
                                        std::abs(I[2] - metric.g_vv(u, v))});
            if (!std::isfinite(ri)) {
                ++s.flagged_vertices;
                continue;
            }
            mesh.res_isom[idx] = ri;
            s.max_isom = std::max(s.max_isom, ri);
            sum_isom += ri;
            ++counted;

            const int margin2 = 2 * margin1;
            if (!with_curvature || i < margin2 || j < margin2 || i + margin2 >= n1 ||
                j + margin2 >= n2)
                continue;
            const double sa = fourth ? ha
                                     : 0.5 * (mesh.axis1_values[static_cast<std::size_t>(i + 1)] -
                                              mesh.axis1_values[static_cast<std::size_t>(i - 1)]);
            const double sb = fourth ? hb
                                     : 0.5 * (mesh.axis2_values[static_cast<std::size_t>(j + 1)] -
                                              mesh.axis2_values[static_cast<std::size_t>(j - 1)]);
            auto d1a = [&](int k) {
                if (fourth)
                    return (EFG(i - 2, j)[static_cast<std::size_t>(k)] -
                            8.0 * EFG(i - 1, j)[static_cast<std::size_t>(k)] +
                            8.0 * EFG(i + 1, j)[static_cast<std::size_t>(k)] -
                            EFG(i + 2, j)[static_cast<std::size_t>(k)]) /
                           (12 * sa);
                return (EFG(i + 1, j)[static_cast<std::size_t>(k)] -
                        EFG(i - 1, j)[static_cast<std::size_t>(k)]) /
                       (2 * sa);
            };
            auto d1b = [&](int k) {
                if (fourth)
                    return (EFG(i, j - 2)[static_cast<std::size_t>(k)] -
                            8.0 * EFG(i, j - 1)[static_cast<std::size_t>(k)] +
                            8.0 * EFG(i, j + 1)[static_cast<std::size_t>(k)] -
                            EFG(i, j + 2)[static_cast<std::size_t>(k)]) /
                           (12 * sb);
                return (EFG(i, j + 1)[static_cast<std::size_t>(k)] -
                        EFG(i, j - 1)[static_cast<std::size_t>(k)]) /
                       (2 * sb);
            };
            auto d2aa = [&](int k) {
                const auto kk = static_cast<std::size_t>(k);
                if (fourth)
                    return (-EFG(i - 2, j)[kk] + 16.0 * EFG(i - 1, j)[kk] - 30.0 * EFG(i, j)[kk] +
                            16.0 * EFG(i + 1, j)[kk] - EFG(i + 2, j)[kk]) /
                           (12 * sa * sa);
                return (EFG(i + 1, j)[kk] - 2 * EFG(i, j)[kk] + EFG(i - 1, j)[kk]) / (sa * sa);
            };
            auto d2bb = [&](int k) {
                const auto kk = static_cast<std::size_t>(k);
                if (fourth)
                    return (-EFG(i, j - 2)[kk] + 16.0 * EFG(i, j - 1)[kk] - 30.0 * EFG(i, j)[kk] +
                            16.0 * EFG(i, j + 1)[kk] - EFG(i, j + 2)[kk]) /
                           (12 * sb * sb);
                return (EFG(i, j + 1)[kk] - 2 * EFG(i, j)[kk] + EFG(i, j - 1)[kk]) / (sb * sb);
            };
            auto d2ab = [&](int k) {
                const auto kk = static_cast<std::size_t>(k);
                return (EFG(i + 1, j + 1)[kk] - EFG(i + 1, j - 1)[kk] - EFG(i - 1, j + 1)[kk] +
                        EFG(i - 1, j - 1)[kk]) /
                       (4 * sa * sb);
            };
            const auto c = EFG(i, j);
            const double K = brioschi_curvature(c[0], c[1], c[2], d1a(0), d1b(0), d1a(1), d1b(1),
                                                d1a(2), d1b(2), d2bb(0), d2ab(1), d2aa(2));
            const double rk = curvature_residual(K, metric.gauss_curvature(u, v));
            if (std::isfinite(rk)) {
                mesh.res_K[idx] = rk;
                s.max_K = std::max(s.max_K, rk);
                sum_K += rk;
                ++counted_K;
            }
        }
    }
    if (counted > 0) s.mean_isom = sum_isom / static_cast<double>(counted);
    if (counted_K > 0) s.mean_K = sum_K / static_cast<double>(counted_K);
    return s;
}

}  // namespace darboux
