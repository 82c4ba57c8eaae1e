#pragma once

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "darboux/catalog.hpp"
#include "darboux/ode.hpp"
#include "darboux/parallel.hpp"
#include "darboux/surface_verify.hpp"

namespace darboux {

struct ProfileSingularityError : std::runtime_error {
    double where;
    ProfileSingularityError(const std::string& what, double s)
        : std::runtime_error(what), where(s) {}
};

// Two-parameter family of isometric immersions with extrinsic symmetry:
// alpha is the angular speed of the ambient Killing field, beta its slope.
// Realizability needs alpha^2 - beta^2/q'^2 - q''^2 > 0 on the s-range.
struct ExtrinsicParams {
    double alpha = 3.0;
    double beta = 0.0;
};

// Profile state along s: position, adapted frame (e3 normal), the normal
// components z1, z2 of the ambient rotation vector, and the chart variable
// u tracked alongside so the closed-form q-data stays exact.
// State layout: x(3) e1(3) e2(3) e3(3) z1 z2 u.
class ProfileSystem {
  public:
    ProfileSystem(const NormalFormCase& c, ExtrinsicParams par) : case_(&c), par_(par) {
        if (c.metric.lorentzian())
            throw std::invalid_argument(
                "profile integration applies to the Riemannian normal forms only");
        if (!(par.alpha > 0)) throw std::invalid_argument("alpha must be positive");
    }

    static constexpr int kX = 0, kE1 = 3, kE2 = 6, kE3 = 9, kZ1 = 12, kZ2 = 13, kU = 14,
                         kN = 15;

    const QProfile& profile() const { return case_->profile; }
    const ExtrinsicParams& params() const { return par_; }

    double z2_of(double s_u) const { return par_.beta / profile().qp_of_u(s_u); }
    double z1_squared(double u) const {
        const double qp = profile().qp_of_u(u), qpp = profile().qpp_of_u(u);
        return par_.alpha * par_.alpha - (par_.beta * par_.beta) / (qp * qp) - qpp * qpp;
    }

    OdeState initial_state(double u0) const {
        const double z1sq = z1_squared(u0);
        if (!(z1sq > 0))
            throw std::invalid_argument(
                "extrinsic parameters give no real profile start (alpha too small)");
        const double z1 = std::sqrt(z1sq);
        const double z2 = z2_of(u0);
        const double z3 = -profile().qpp_of_u(u0);
        // Frame chosen so the ambient rotation vector is (0,0,alpha).
        const Vec3 w = Vec3{z1, z2, z3} / par_.alpha;
        Mat3 M = Mat3::identity();
        const Vec3 zhat{0, 0, 1};
        const Vec3 axis = w.cross(zhat);
        const double sin_a = axis.norm(), cos_a = w.dot(zhat);
        if (sin_a > 1e-14) {
            M = Mat3::rotation(axis, std::atan2(sin_a, cos_a));
        } else if (cos_a < 0) {
            M = Mat3::rotation({1, 0, 0}, M_PI);
        }
        OdeState y(kN, 0.0);
        for (int i = 0; i < 3; ++i) {
            y[static_cast<std::size_t>(kE1 + i)] = M(i, 0);
            y[static_cast<std::size_t>(kE2 + i)] = M(i, 1);
            y[static_cast<std::size_t>(kE3 + i)] = M(i, 2);
        }
        y[kZ1] = z1;
        y[kZ2] = z2;
        y[kU] = u0;
        return y;
    }

    OdeState rhs(double s, const OdeState& y) const {
        const double z1 = y[kZ1], z2 = y[kZ2], u = y[kU];
        if (!(z1 > 1e-8)) {
            std::ostringstream os;
            os << "profile reaches the z1 = 0 boundary near s = " << s;
            throw ProfileSingularityError(os.str(), s);
        }
        const double qp = profile().qp_of_u(u);
        const double qpp = profile().qpp_of_u(u);
        const double qppp = profile().qppp_of_u(u);
        const double w31 = (qppp - z2 * z2 / qp) / z1;
        const double w32 = z2 / qp;
        auto at = [&](int base) {
            return Vec3{y[static_cast<std::size_t>(base)], y[static_cast<std::size_t>(base + 1)],
                        y[static_cast<std::size_t>(base + 2)]};
        };
        const Vec3 e1 = at(kE1), e2 = at(kE2), e3 = at(kE3);
        OdeState d(kN, 0.0);
        auto put = [&](int base, const Vec3& v) {
            d[static_cast<std::size_t>(base)] = v.x;
            d[static_cast<std::size_t>(base + 1)] = v.y;
            d[static_cast<std::size_t>(base + 2)] = v.z;
        };
        put(kX, e1);
        put(kE1, e3 * w31);
        put(kE2, e3 * w32);
        put(kE3, -(e1 * w31 + e2 * w32));
        d[kZ1] = -qpp * w31;
        d[kZ2] = -z2 * qpp / qp;
        d[kU] = 1.0 / profile().dsdu(u);
        return d;
    }

  private:
    const NormalFormCase* case_;
    ExtrinsicParams par_;
};

struct ProfileResult {
    Trajectory traj;
    double s_begin = 0, s_end = 0;
    bool hit_axis = false;       // stopped at the z1 = 0 boundary
    double boundary_s = 0;       // where, if hit_axis
    double max_conserved_drift = 0;  // both first integrals
    double max_frame_defect = 0;     // Gram-matrix deviation from identity
};

inline ProfileResult integrate_profile(const NormalFormCase& c, ExtrinsicParams par, double s_a,
                                       double s_b, const OdeConfig& base_cfg = OdeConfig{}) {
    const ProfileSystem sys(c, par);
    const QProfile& prof = c.profile;
    if (!(s_a < s_b)) throw std::invalid_argument("integrate_profile: empty s-range");
    if (s_a < prof.s_min() - 1e-12 || s_b > prof.s_max() + 1e-12)
        throw std::invalid_argument("integrate_profile: s-range outside the chart domain");
    // Parameter admissibility over the requested range.
    for (int i = 0; i <= 100; ++i) {
        const double u = prof.u_from_s(s_a + (s_b - s_a) * i / 100.0);
        if (!(sys.z1_squared(u) > 0))
            throw std::invalid_argument(
                "extrinsic parameters lose transversality inside the requested s-range");
    }

    OdeConfig cfg = base_cfg;
    cfg.abs_tol = std::min(cfg.abs_tol, 1e-11);
    cfg.rel_tol = std::min(cfg.rel_tol, 1e-11);
    if (cfg.max_step <= 0.0) cfg.max_step = (s_b - s_a) / 1000.0;

    ProfileResult out;
    out.s_begin = s_a;
    OdeState y = sys.initial_state(prof.u_from_s(s_a));
    double s = s_a;
    out.traj.nodes.push_back({s, y, sys.rhs(s, y)});
    const int chunks = 64;
    for (int kchunk = 0; kchunk < chunks; ++kchunk) {
        const double target = s_a + (s_b - s_a) * (kchunk + 1) / chunks;
        try {
            Trajectory part = ode_solve([&sys](double ss, const OdeState& yy) { return sys.rhs(ss, yy); },
                                        s, y, target, cfg);
            if (!part.ok()) {
                out.hit_axis = true;
                out.boundary_s = part.nodes.back().t;
                for (std::size_t i = 1; i < part.nodes.size(); ++i)
                    out.traj.nodes.push_back(part.nodes[i]);
                break;
            }
            for (std::size_t i = 1; i < part.nodes.size(); ++i)
                out.traj.nodes.push_back(part.nodes[i]);
            s = target;
            y = out.traj.nodes.back().y;
        } catch (const ProfileSingularityError& e) {
            out.hit_axis = true;
            out.boundary_s = e.where;
            break;
        }
    }
    out.s_end = out.traj.nodes.back().t;

    // Conservation and orthonormality diagnostics.
    const double a2 = par.alpha * par.alpha;
    for (const auto& node : out.traj.nodes) {
        const double u = node.y[ProfileSystem::kU];
        const double qp = prof.qp_of_u(u), qpp = prof.qpp_of_u(u);
        const double z1 = node.y[ProfileSystem::kZ1], z2 = node.y[ProfileSystem::kZ2];
        out.max_conserved_drift =
            std::max(out.max_conserved_drift, std::abs(z2 * qp - par.beta));
        out.max_conserved_drift =
            std::max(out.max_conserved_drift, std::abs(z1 * z1 + z2 * z2 + qpp * qpp - a2));
        Mat3 F;
        for (int i = 0; i < 3; ++i) {
            F(i, 0) = node.y[static_cast<std::size_t>(ProfileSystem::kE1 + i)];
            F(i, 1) = node.y[static_cast<std::size_t>(ProfileSystem::kE2 + i)];
            F(i, 2) = node.y[static_cast<std::size_t>(ProfileSystem::kE3 + i)];
        }
        out.max_frame_defect = std::max(
            out.max_frame_defect, signature_orthogonality_defect(F, Signature::euclidean()));
    }
    return out;
}

struct KillingResiduals {
    double max_eq1 = 0, max_eq2 = 0, max_eq3 = 0, max_dz = 0;
};

// Finite-difference residuals of the tangential-Killing-field system on a
// stored mesh with frames: Y = y1 e1 + y2 e2 tangent samples and a constant
// ambient rotation vector Z (Euclidean).
inline KillingResiduals killing_predicate(const SurfaceMesh& mesh, const std::vector<Vec3>& Y,
                                          const Vec3& Z) {
    if (!mesh.has_frames())
        throw std::invalid_argument("killing_predicate: mesh has no frame channel");
    if (Y.size() != mesh.vertex_count())
        throw std::invalid_argument("killing_predicate: Y channel size mismatch");
    KillingResiduals out;
    const int n1 = mesh.n1(), n2 = mesh.n2();
    auto fr = [&](int i, int j) { return mesh.frames[mesh.index(i, j)]; };
    auto pos = [&](int i, int j) { return mesh.positions[mesh.index(i, j)]; };
    for (int i = 1; i + 1 < n1; ++i) {
        for (int j = 1; j + 1 < n2; ++j) {
            const Mat3 F = fr(i, j);
            const Vec3 e1 = F.column(0), e2 = F.column(1), e3 = F.column(2);
            const double y1 = Y[mesh.index(i, j)].dot(e1);
            const double y2 = Y[mesh.index(i, j)].dot(e2);
            const double z1 = Z.dot(e1), z2 = Z.dot(e2), z3 = Z.dot(e3);
            for (int dir = 0; dir < 2; ++dir) {
                const int di = dir == 0 ? 1 : 0, dj = dir == 0 ? 0 : 1;
                const double h =
                    dir == 0 ? mesh.axis1_values[static_cast<std::size_t>(i + 1)] -
                                   mesh.axis1_values[static_cast<std::size_t>(i - 1)]
                             : mesh.axis2_values[static_cast<std::size_t>(j + 1)] -
                                   mesh.axis2_values[static_cast<std::size_t>(j - 1)];
                const Vec3 dpos = (pos(i + di, j + dj) - pos(i - di, j - dj)) / h;
                const Mat3 Fp = fr(i + di, j + dj), Fm = fr(i - di, j - dj);
                const Vec3 de1 = (Fp.column(0) - Fm.column(0)) / h;
                const Vec3 de2 = (Fp.column(1) - Fm.column(1)) / h;
                const Vec3 de3 = (Fp.column(2) - Fm.column(2)) / h;
                const double dy1 = (Y[mesh.index(i + di, j + dj)].dot(Fp.column(0)) -
                                    Y[mesh.index(i - di, j - dj)].dot(Fm.column(0))) /
                                   h;
                const double dy2 = (Y[mesh.index(i + di, j + dj)].dot(Fp.column(1)) -
                                    Y[mesh.index(i - di, j - dj)].dot(Fm.column(1))) /
                                   h;
                const double w1 = e1.dot(dpos), w2 = e2.dot(dpos);
                const double w12 = e1.dot(de2), w21 = e2.dot(de1);
                const double w31 = e3.dot(de1), w32 = e3.dot(de2);
                out.max_eq1 = std::max(out.max_eq1, std::abs(dy1 + y2 * w12 - z3 * w2));
                out.max_eq2 = std::max(out.max_eq2, std::abs(dy2 + y1 * w21 + z3 * w1));
                out.max_eq3 =
                    std::max(out.max_eq3, std::abs(y1 * w31 + y2 * w32 - z2 * w1 + z1 * w2));
                const double dz1 = (Z.dot(Fp.column(0)) - Z.dot(Fm.column(0))) / h +
                                   z2 * e1.dot(de2) + z3 * e1.dot(de3);
                const double dz2 = (Z.dot(Fp.column(1)) - Z.dot(Fm.column(1))) / h +
                                   z1 * e2.dot(de1) + z3 * e2.dot(de3);
                const double dz3 = (Z.dot(Fp.column(2)) - Fm.column(2).dot(Z)) / h +
                                   z1 * e3.dot(de1) + z2 * e3.dot(de2);
                out.max_dz = std::max({out.max_dz, std::abs(dz1), std::abs(dz2), std::abs(dz3)});
            }
        }
    }
    return out;
}

struct RevolveResult {
    SurfaceMesh mesh;  // axes (s,t), Euclidean ambient
    ProfileResult profile;
    Vec3 rotation_vector;  // Z = (0,0,alpha) in canonical placement
    double pitch = 0;      // translation speed along Z per unit t is pitch*|Z|
    double max_killing_speed_mismatch = 0;  // | |K(x(s))| - |q'(s)| |
    VerifySummary induced;                  // vs ds^2 + q'(s)^2 dt^2
    KillingResiduals killing;
    std::vector<Vec3> killing_samples;  // Y per vertex
};

// Sweeps the integrated profile by the exact rigid screw motion of the
// ambient Killing field; canonical placement puts the axis on the z-axis.
inline RevolveResult revolve(const NormalFormCase& c, ExtrinsicParams par, double s_a, double s_b,
                             double t_a, double t_b, int n1, int n2, bool verify = true) {
    if (n1 < 2 || n2 < 2) throw std::invalid_argument("revolve: grid must be >= 2x2");
    RevolveResult out;
    out.profile = integrate_profile(c, par, s_a, s_b);
    const Trajectory& traj = out.profile.traj;
    const QProfile& prof = c.profile;
    const double s_hi = out.profile.s_end;

    // Ambient Killing data in canonical placement.
    const OdeState y0 = traj.nodes.front().y;
    const Vec3 e2_0{y0[ProfileSystem::kE2], y0[ProfileSystem::kE2 + 1],
                    y0[ProfileSystem::kE2 + 2]};
    const double qp0 = prof.qp_of_u(y0[ProfileSystem::kU]);
    const Vec3 Z{0, 0, par.alpha};
    const Vec3 W = qp0 * e2_0;  // profile starts at the origin
    const double a = W.dot(Z) / (par.alpha * par.alpha);
    const Vec3 Wp = W - a * Z;
    const Vec3 axis_point = Wp.cross(Z) / (par.alpha * par.alpha);
    out.rotation_vector = Z;
    out.pitch = a;

    auto profile_x = [&](double s) {
        const OdeState y = traj.at(s);
        return Vec3{y[ProfileSystem::kX], y[ProfileSystem::kX + 1], y[ProfileSystem::kX + 2]} -
               axis_point;
    };
    auto profile_frame = [&](double s) {
        const OdeState y = traj.at(s);
        Mat3 F;
        for (int i = 0; i < 3; ++i) {
            F(i, 0) = y[static_cast<std::size_t>(ProfileSystem::kE1 + i)];
            F(i, 1) = y[static_cast<std::size_t>(ProfileSystem::kE2 + i)];
            F(i, 2) = y[static_cast<std::size_t>(ProfileSystem::kE3 + i)];
        }
        return F;
    };
    auto qp_at = [&](double s) { return prof.qp_of_u(traj.at(s)[ProfileSystem::kU]); };

    PositionMap pos = [=](double s, double t) {
        const Mat3 R = Mat3::rotation({0, 0, 1}, -par.alpha * t);
        return R * profile_x(s) + t * a * Z;
    };
    FrameMap frame = [=](double s, double t) {
        const Mat3 R = Mat3::rotation({0, 0, 1}, -par.alpha * t);
        return R * profile_frame(s);
    };

    SurfaceMesh& mesh = out.mesh;
    mesh.axis1 = "s";
    mesh.axis2 = "t";
    mesh.sig = Signature::euclidean();
    for (int i = 0; i < n1; ++i) mesh.axis1_values.push_back(s_a + (s_hi - s_a) * i / (n1 - 1.0));
    for (int j = 0; j < n2; ++j) mesh.axis2_values.push_back(t_a + (t_b - t_a) * j / (n2 - 1.0));
    const std::size_t n = static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2);
    mesh.positions.resize(n);
    mesh.frames.resize(n);
    out.killing_samples.resize(n);
    parallel_for(n1, [&](long i) {
        for (int j = 0; j < n2; ++j) {
            const double s = mesh.axis1_values[static_cast<std::size_t>(i)];
            const double t = mesh.axis2_values[static_cast<std::size_t>(j)];
            const std::size_t idx = mesh.index(static_cast<int>(i), j);
            mesh.positions[idx] = pos(s, t);
            mesh.frames[idx] = frame(s, t);
            // Restriction of the ambient Killing field: Y = q' e2.
            out.killing_samples[idx] = qp_at(s) * mesh.frames[idx].column(1);
        }
    });

    // Killing-speed consistency: in the shifted frame the field is
    // a Z + x x Z with a Z = W + p0 x Z; its length along the profile
    // must equal |q'|.
    for (int i = 0; i < 50; ++i) {
        const double s = s_a + (s_hi - s_a) * i / 49.0;
        const Vec3 K = (W + axis_point.cross(Z)) + profile_x(s).cross(Z);
        out.max_killing_speed_mismatch =
            std::max(out.max_killing_speed_mismatch, std::abs(K.norm() - std::abs(qp_at(s))));
    }

    if (verify) {
        TargetForm target = [=](double s, double) {
            const double qp = qp_at(s);
            return std::array<double, 3>{1.0, 0.0, qp * qp};
        };
        auto targetK = [&](double s, double) {
            return c.curvature_closed(traj.at(s)[ProfileSystem::kU]);
        };
        out.induced = verify_against_target(mesh, pos, target, targetK, 1e-5, 2e-3);
        out.killing = killing_predicate(mesh, out.killing_samples, Z);
    }
    return out;
}

}  // namespace darboux
