// Command-line front end: normal-form catalog queries, Darboux
// integrability checks, explicit embeddings of u^2 (dv^2 - du^2), the
// geometric Cauchy solver and extrinsic-symmetry sweeps.

#include <cmath>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "darboux/cauchy.hpp"
#include "darboux/catalog.hpp"
#include "darboux/checker.hpp"
#include "darboux/embedding.hpp"
#include "darboux/mesh_io.hpp"
#include "darboux/metric_io.hpp"
#include "darboux/report.hpp"
#include "darboux/revolve.hpp"

namespace {

using namespace darboux;

constexpr int kExitPass = 0;
constexpr int kExitError = 1;
constexpr int kExitFail = 2;

struct GridSize {
    int n1 = 20, n2 = 20;
};

GridSize parse_grid(const std::string& s) {
    const auto x = s.find('x');
    if (x == std::string::npos) throw CLI::ValidationError("--grid", "expected NxM");
    GridSize g;
    g.n1 = std::stoi(s.substr(0, x));
    g.n2 = std::stoi(s.substr(x + 1));
    if (g.n1 < 2 || g.n2 < 2) throw CLI::ValidationError("--grid", "grid must be at least 2x2");
    return g;
}

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    std::string item;
    std::stringstream ss(s);
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

// Generator option: "c0,c1,..." or "poly:c0,c1,..." for polynomials,
// "cubic:eps" for eps^4 t^3 / 48.
Smooth1D parse_generator(const std::string& spec) {
    if (spec.rfind("cubic:", 0) == 0) {
        const double eps = std::stod(spec.substr(6));
        return Smooth1D::poly({0, 0, 0, std::pow(eps, 4) / 48.0});
    }
    std::string body = spec;
    if (spec.rfind("poly:", 0) == 0) body = spec.substr(5);
    return Smooth1D::poly(parse_doubles(body));
}

OrthogonalMetric2D resolve_metric(const std::string& name) {
    if (is_catalog_id(name)) return catalog(name).metric;
    if (name == "sphere") return make_round_sphere();
    if (name == "hyperbolic-plane") return make_hyperbolic_plane();
    if (name == "perturbed-R1") return make_perturbed_r1(0.1);
    return metric_from_file(name);  // JSON metric file
}

int run_catalog(const std::string& id, const std::string& report_path) {
    ReportBuilder rb("catalog");
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& c : normal_form_catalog()) {
        if (!id.empty() && c.name != id) continue;
        const DomainRect& d = c.metric.domain();
        const double um = d.u_mid();
        nlohmann::json e;
        e["id"] = c.name;
        e["signature"] = c.metric.lorentzian() ? "lorentzian" : "riemannian";
        e["epsilon"] = c.epsilon;
        e["killing"] = c.killing_type == KillingCausalType::timelike    ? "timelike"
                       : c.killing_type == KillingCausalType::spacelike ? "spacelike"
                                                                        : "n/a";
        e["domain"] = {d.u_min, d.u_max, d.v_min, d.v_max};
        e["sample_u"] = um;
        e["g_uu"] = c.metric.g_uu(um, 0.0);
        e["g_vv"] = c.metric.g_vv(um, 0.0);
        e["K_closed"] = c.curvature_closed(um);
        e["K_numeric"] = c.metric.gauss_curvature(um, 0.0);
        e["profile"] = {{"ode_sign", c.profile.ode_sign},
                        {"C", c.profile.C},
                        {"s_range", {c.profile.s_min(), c.profile.s_max()}},
                        {"q_at_mid", c.profile.q_of_u(um)},
                        {"qp_at_mid", c.profile.qp_of_u(um)}};
        entries.push_back(e);
    }
    if (!id.empty() && entries.empty()) throw std::invalid_argument("unknown metric id " + id);
    rb.root()["catalog"] = entries;
    rb.set_verdict(true);
    if (!report_path.empty())
        rb.write(report_path);
    else
        std::cout << rb.finish().dump(2) << "\n";
    return kExitPass;
}

int run_check(const std::string& metric_name, const GridSize& grid, double tol, double fd_step,
              const std::string& report_path) {
    ReportBuilder rb("check");
    rb.set_config({{"metric", metric_name},
                   {"grid", {grid.n1, grid.n2}},
                   {"tol", tol},
                   {"fd_step", fd_step}});
    rb.set_tolerances({{"condition_tol", tol}, {"fd_step", fd_step}});
    const OrthogonalMetric2D m = resolve_metric(metric_name);
    bool verdict = false;
    try {
        const DarbouxReport rep = check_integrability(m, grid.n1, grid.n2, tol, fd_step);
        verdict = rep.verdict;
        double mean = 0;
        for (const auto& s : rep.samples) mean += s.max_abs;
        mean /= static_cast<double>(rep.samples.size());
        rb.add_channel("condition_residual", rep.max_residual, mean);
        rb.root()["epsilon"] = rep.epsilon;
        rb.root()["signature"] = rep.lorentzian ? "lorentzian" : "riemannian";
    } catch (const FlatPointError& e) {
        rb.root()["error"] = e.what();
        verdict = false;
    } catch (const MixedTypeError& e) {
        rb.root()["error"] = e.what();
        verdict = false;
    }
    rb.set_verdict(verdict);
    if (!report_path.empty())
        rb.write(report_path);
    else
        std::cout << rb.finish().dump(2) << "\n";
    return verdict ? kExitPass : kExitFail;
}

int run_embed(const std::string& F_spec, const std::string& G_spec, const std::string& pq_domain,
              const std::string& special, const std::string& uv_domain, const GridSize& grid,
              double tol, const std::string& out_path, const std::string& report_path) {
    ReportBuilder rb("embed");
    nlohmann::json cfg;
    cfg["grid"] = {grid.n1, grid.n2};
    cfg["tol"] = tol;
    rb.set_tolerances({{"isometry_tol", tol}});
    bool verdict = false;
    SurfaceMesh mesh;

    if (!special.empty()) {
        const auto eps = parse_doubles(special);
        if (eps.size() != 2) throw std::invalid_argument("--special expects e1,e2");
        const auto dom = parse_doubles(uv_domain.empty() ? "-1,1,-1,1" : uv_domain);
        if (dom.size() != 4) throw std::invalid_argument("--uv-domain expects umin,umax,vmin,vmax");
        cfg["special"] = {eps[0], eps[1]};
        cfg["uv_domain"] = dom;
        rb.set_config(cfg);
        SpecialMeshResult r =
            mesh_special(eps[0], eps[1], DomainRect{dom[0], dom[1], dom[2], dom[3]}, grid.n1,
                         grid.n2);
        rb.add_verify_summary("surface", r.verify);
        verdict = r.verify.max_isom < tol;
        mesh = std::move(r.mesh);
    } else {
        if (F_spec.empty() || G_spec.empty())
            throw std::invalid_argument("embed needs --F and --G (or --special)");
        const auto dom = parse_doubles(pq_domain.empty() ? "-2,-0.2,0.2,2" : pq_domain);
        if (dom.size() != 4) throw std::invalid_argument("--pq-domain expects pa,pb,qa,qb");
        cfg["F"] = F_spec;
        cfg["G"] = G_spec;
        cfg["pq_domain"] = dom;
        rb.set_config(cfg);
        const GeneratorPair gp(parse_generator(F_spec), parse_generator(G_spec), dom[0], dom[1],
                               dom[2], dom[3]);
        GeneratorMeshResult r = mesh_from_generators(gp, grid.n1, grid.n2);
        rb.add_verify_summary("surface", r.verify);
        rb.add_max("contact_form_theta0", r.max_pfaffian[0]);
        rb.add_max("contact_form_theta1", r.max_pfaffian[1]);
        rb.add_max("contact_form_theta2", r.max_pfaffian[2]);
        rb.add_max("contact_form_theta3", r.max_pfaffian[3]);
        rb.root()["jacobian_sign_changes"] = r.jacobian_sign_changes;
        verdict = r.verify.max_isom < tol;
        mesh = std::move(r.mesh);
    }
    rb.set_verdict(verdict);
    if (!out_path.empty()) export_mesh(mesh, out_path);
    if (!report_path.empty())
        rb.write(report_path);
    else
        std::cout << rb.finish().dump(2) << "\n";
    return verdict ? kExitPass : kExitFail;
}

int run_cauchy(const std::string& curve_path, double t0_opt, double r0,
               std::optional<double> s0, std::optional<double> v0, const std::string& method,
               const GridSize& grid, const std::string& t_range, double tol_diag, double tol_isom,
               const std::string& out_path, const std::string& report_path) {
    ReportBuilder rb("cauchy");
    InitialCurve curve = curve_from_file(curve_path);
    if (std::isfinite(t0_opt)) curve.t0 = t0_opt;
    CauchyOptions opts;
    opts.lift.r0 = r0;
    opts.lift.s0 = s0;
    opts.lift.v0 = v0;
    if (method == "direct")
        opts.lift.method = LiftMethod::direct_residual;
    else if (method == "printed")
        opts.lift.method = LiftMethod::printed_ode;
    else if (method == "printed-verbatim")
        opts.lift.method = LiftMethod::printed_ode_verbatim;
    else
        throw std::invalid_argument("--method must be direct, printed or printed-verbatim");
    opts.grid_n1 = grid.n1;
    opts.grid_n2 = grid.n2;
    if (!t_range.empty()) {
        const auto tr = parse_doubles(t_range);
        if (tr.size() != 2) throw std::invalid_argument("--t-range expects a,b");
        opts.t_lo = tr[0];
        opts.t_hi = tr[1];
    }
    nlohmann::json cfg;
    cfg["curve"] = curve_path;
    cfg["t0"] = curve.t0;
    cfg["r0"] = r0;
    if (s0) cfg["s0"] = *s0;
    if (v0) cfg["v0"] = *v0;
    cfg["method"] = method;
    cfg["grid"] = {grid.n1, grid.n2};
    rb.set_config(cfg);
    rb.set_tolerances({{"diagonal_tol", tol_diag}, {"isometry_tol", tol_isom}});

    const CauchySolution sol = solve_cauchy(curve, opts);
    rb.root()["admissibility"] = {{"min_abs_dx1_minus_dx2", sol.diag.admissibility.min_abs_d12},
                                  {"min_abs_dx3", sol.diag.admissibility.min_abs_d3},
                                  {"pass", sol.diag.admissibility.pass}};
    rb.add_max("quadrature_constraint", sol.diag.max_constraint_residual);
    for (int k = 0; k < 4; ++k) {
        rb.add_max("lift_form_n1_" + std::to_string(k),
                   sol.diag.max_lift_n1_forms[static_cast<std::size_t>(k)]);
        rb.add_max("lift_form_n2_" + std::to_string(k),
                   sol.diag.max_lift_n2_forms[static_cast<std::size_t>(k)]);
    }
    rb.add_max("v_identity", sol.diag.max_v_identity);
    rb.add_max("split_reconstruction", sol.diag.max_split_reconstruction);
    rb.add_max("diagonal_error", sol.diag.max_diagonal_error);
    rb.add_max("normal_plane", sol.diag.max_normal_plane_residual);
    rb.add_verify_summary("surface", sol.diag.surface);
    rb.add_max("contact_form_theta0", sol.diag.max_pfaffian[0]);
    rb.add_max("contact_form_theta1", sol.diag.max_pfaffian[1]);
    rb.add_max("contact_form_theta2", sol.diag.max_pfaffian[2]);
    rb.add_max("contact_form_theta3", sol.diag.max_pfaffian[3]);

    const bool verdict = sol.diag.admissibility.pass &&
                         sol.diag.max_diagonal_error < tol_diag &&
                         sol.diag.surface.max_isom < tol_isom;
    rb.set_verdict(verdict);
    if (!out_path.empty()) export_mesh(sol.mesh, out_path);
    if (!report_path.empty())
        rb.write(report_path);
    else
        std::cout << rb.finish().dump(2) << "\n";
    return verdict ? kExitPass : kExitFail;
}

int run_revolve(const std::string& metric_id, double alpha, double beta,
                const std::string& s_range, const std::string& t_range, const GridSize& grid,
                const std::string& out_path, const std::string& report_path) {
    if (!is_catalog_id(metric_id))
        throw std::invalid_argument("revolve needs a catalog metric id, got " + metric_id);
    const NormalFormCase& c = catalog(metric_id);
    const auto sr = parse_doubles(s_range.empty() ? "0.05,1.5" : s_range);
    if (sr.size() != 2) throw std::invalid_argument("--s-range expects a,b");
    const auto tr = parse_doubles(t_range.empty() ? "-3.14159265,3.14159265" : t_range);
    if (tr.size() != 2) throw std::invalid_argument("--t-range expects a,b");

    ReportBuilder rb("revolve");
    rb.set_config({{"metric", metric_id},
                   {"alpha", alpha},
                   {"beta", beta},
                   {"s_range", sr},
                   {"t_range", tr},
                   {"grid", {grid.n1, grid.n2}}});
    rb.set_tolerances({{"conserved_tol", 1e-8}, {"isometry_tol", 1e-5}});
    const RevolveResult r = revolve(c, {alpha, beta}, sr[0], sr[1], tr[0], tr[1], grid.n1,
                                    grid.n2);
    rb.add_max("conserved_drift", r.profile.max_conserved_drift);
    rb.add_max("frame_defect", r.profile.max_frame_defect);
    rb.add_max("killing_speed", r.max_killing_speed_mismatch);
    rb.add_verify_summary("induced", r.induced);
    rb.root()["pitch"] = r.pitch;
    rb.root()["hit_axis"] = r.profile.hit_axis;
    if (r.profile.hit_axis) rb.root()["boundary_s"] = r.profile.boundary_s;
    rb.root()["killing_residuals"] = {{"eq1", r.killing.max_eq1},
                                      {"eq2", r.killing.max_eq2},
                                      {"eq3", r.killing.max_eq3},
                                      {"dz", r.killing.max_dz}};
    const bool verdict = r.profile.max_conserved_drift < 1e-8 && r.induced.max_isom < 1e-5;
    rb.set_verdict(verdict);
    if (!out_path.empty()) export_mesh(r.mesh, out_path);
    if (!report_path.empty())
        rb.write(report_path);
    else
        std::cout << rb.finish().dump(2) << "\n";
    return verdict ? kExitPass : kExitFail;
}

int run_selftest(unsigned seed, int samples, const std::string& report_path) {
    ReportBuilder rb("selftest");
    rb.set_config({{"seed", seed}, {"samples", samples}});
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> d1(0.1, 4.0), d23(-3.0, 3.0), du(0.05, 5.0),
        dpq(-2.0, 2.0), d0(0.2, 2.0);
    double membership = 0, chart_consistency = 0, psi_roundtrip = 0, phi_roundtrip = 0,
           superpose_shift = 0;
    for (int i = 0; i < samples; ++i) {
        ACoords a{d1(rng), d23(rng), d23(rng)};
        if (std::abs(a.a1 - a.a2) < 1e-2 || std::abs(a.a1 + a.a2) < 1e-2) continue;
        const double u = du(rng);
        membership = std::max(membership, lorentz_membership_defect(so12_from_a(a)));
        const FirstIntegrals f = first_integrals(u, a);
        chart_consistency = std::max(
            chart_consistency, (so12_from_pq(f.p, f.q, f.p0, f.q0) - so12_from_a(a)).max_abs());

        PQPoint n1;
        n1.p = dpq(rng);
        n1.q = dpq(rng);
        if (std::abs(n1.p - n1.q) < 1e-2) continue;
        n1.p0 = d0(rng);
        n1.q0 = d0(rng);
        n1.v = dpq(rng);
        n1.x = {dpq(rng), dpq(rng), dpq(rng)};
        const PQPoint back = psi_inverse(psi(n1));
        psi_roundtrip = std::max(psi_roundtrip, (back.x - n1.x).max_abs());

        BaseFramePoint b;
        b.u = u;
        b.v = n1.v;
        b.a = a;
        b.x = n1.x;
        const BaseFramePoint b2 = phi_inverse(phi(b));
        phi_roundtrip = std::max({phi_roundtrip, std::abs(b2.u - b.u) / std::max(1.0, b.u),
                                  std::abs(b2.a.a1 - b.a.a1) / std::max(1.0, std::abs(b.a.a1)),
                                  std::abs(b2.a.a2 - b.a.a2) / std::max(1.0, std::abs(b.a.a2)),
                                  std::abs(b2.a.a3 - b.a.a3) / std::max(1.0, std::abs(b.a.a3))});

        // Abelian superposition: constant shifts cancel.
        SingularCurvePoint sp;
        sp.side = CurveSide::plus;
        sp.par = n1.p;
        sp.scale = n1.p0;
        sp.v = dpq(rng);
        sp.y = {dpq(rng), dpq(rng), dpq(rng)};
        SingularCurvePoint sm;
        sm.side = CurveSide::minus;
        sm.par = n1.q;
        sm.scale = n1.q0;
        sm.v = dpq(rng);
        sm.y = {dpq(rng), dpq(rng), dpq(rng)};
        const N2Point base = superpose(sp, sm);
        const double shift = dpq(rng);
        sp.v += shift;
        sm.v -= shift;
        sp.y.x += 2 * shift;
        sm.y.x -= 2 * shift;
        const N2Point after = superpose(sp, sm);
        superpose_shift = std::max(
            {superpose_shift, std::abs(after.v - base.v), std::abs(after.y.x - base.y.x)});
    }
    rb.add_max("lorentz_membership", membership);
    rb.add_max("chart_consistency", chart_consistency);
    rb.add_max("psi_roundtrip", psi_roundtrip);
    rb.add_max("phi_roundtrip", phi_roundtrip);
    rb.add_max("superpose_shift_invariance", superpose_shift);
    rb.set_tolerances({{"membership_tol", 1e-10},
                       {"roundtrip_tol", 1e-12},
                       {"phi_roundtrip_tol", 1e-10},
                       {"chart_tol", 1e-10}});
    const bool verdict = membership < 1e-10 && chart_consistency < 1e-10 &&
                         psi_roundtrip < 1e-12 && phi_roundtrip < 1e-10 &&
                         superpose_shift < 1e-12;
    rb.set_verdict(verdict);
    if (!report_path.empty())
        rb.write(report_path);
    else
        std::cout << rb.finish().dump(2) << "\n";
    return verdict ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Darboux-integrable 2-metrics: classification checks and explicit "
                 "isometric embeddings into flat 3-space"};
    app.require_subcommand(1);

    // catalog
    auto* cat = app.add_subcommand("catalog", "list the normal-form metric catalog");
    std::string cat_id, cat_report;
    cat->add_option("--metric", cat_id, "restrict to one catalog id");
    cat->add_option("--out", cat_report, "write the JSON report here");

    // check
    auto* chk = app.add_subcommand("check", "test a metric for Darboux integrability");
    std::string chk_metric, chk_grid = "20x20", chk_report;
    double chk_tol = 1e-4, chk_fd = 1e-5;
    chk->add_option("--metric", chk_metric,
                    "catalog id, builtin (sphere, hyperbolic-plane, perturbed-R1) or JSON file")
        ->required();
    chk->add_option("--grid", chk_grid, "sample grid NxM (default 20x20)");
    chk->add_option("--tol", chk_tol, "condition tolerance (default 1e-4)");
    chk->add_option("--fd-step", chk_fd, "differencing step (default 1e-5)");
    chk->add_option("--out", chk_report, "write the JSON report here");

    // embed
    auto* emb = app.add_subcommand("embed", "isometric embedding of u^2 (dv^2 - du^2)");
    std::string emb_F, emb_G, emb_pq, emb_special, emb_uv, emb_grid = "50x50", emb_out,
                emb_report;
    double emb_tol = 1e-5;
    emb->add_option("--F", emb_F, "plus-side generator: coefficients c0,c1,... or cubic:eps");
    emb->add_option("--G", emb_G, "minus-side generator");
    emb->add_option("--pq-domain", emb_pq, "pa,pb,qa,qb (default -2,-0.2,0.2,2)");
    emb->add_option("--special", emb_special, "constant-generator case: e1,e2");
    emb->add_option("--uv-domain", emb_uv, "umin,umax,vmin,vmax for --special");
    emb->add_option("--grid", emb_grid, "mesh grid NxM (default 50x50)");
    emb->add_option("--tol", emb_tol, "isometry verdict tolerance (default 1e-5)");
    emb->add_option("--out", emb_out, "mesh output (.obj or .csv)");
    emb->add_option("--report", emb_report, "write the JSON report here");

    // cauchy
    auto* cau = app.add_subcommand("cauchy", "geometric Cauchy problem for u^2 (dv^2 - du^2)");
    std::string cau_curve, cau_method = "direct", cau_grid = "41x41", cau_trange, cau_out,
                cau_report;
    double cau_t0 = std::numeric_limits<double>::quiet_NaN(), cau_r0 = 1.0;
    double cau_told = 1e-6, cau_toli = 1e-5;
    std::optional<double> cau_s0, cau_v0;
    double cau_s0_raw = std::numeric_limits<double>::quiet_NaN();
    double cau_v0_raw = std::numeric_limits<double>::quiet_NaN();
    cau->add_option("--curve", cau_curve, "initial curve JSON file")->required();
    cau->add_option("--t0", cau_t0, "base parameter (default: curve file / midpoint)");
    cau->add_option("--r0", cau_r0, "lift scale r(t0) (default 1)");
    cau->add_option("--s0", cau_s0_raw, "lift offset s(t0) (default from r'(t0) = 1)");
    cau->add_option("--v0", cau_v0_raw, "chart value v(t0) (default r0^2 s0)");
    cau->add_option("--method", cau_method, "direct | printed | printed-verbatim");
    cau->add_option("--grid", cau_grid, "mesh grid NxM (default 41x41)");
    cau->add_option("--t-range", cau_trange, "mesh parameter range a,b (default: curve domain)");
    cau->add_option("--tol-diagonal", cau_told, "diagonal reproduction tolerance");
    cau->add_option("--tol-isom", cau_toli, "isometry verdict tolerance");
    cau->add_option("--out", cau_out, "mesh output (.obj or .csv)");
    cau->add_option("--report", cau_report, "write the JSON report here");

    // revolve
    auto* rev = app.add_subcommand("revolve", "extrinsic-symmetry immersion of a Riemannian id");
    std::string rev_metric = "R1", rev_srange, rev_trange, rev_grid = "60x60", rev_out,
                rev_report;
    double rev_alpha = 3.0, rev_beta = 0.0;
    rev->add_option("--metric", rev_metric, "catalog id (R1..R4)");
    rev->add_option("--alpha", rev_alpha, "angular speed of the ambient Killing field");
    rev->add_option("--beta", rev_beta, "slope parameter (0 = surface of revolution)");
    rev->add_option("--s-range", rev_srange, "profile arclength range a,b (default 0.05,1.5)");
    rev->add_option("--t-range", rev_trange, "sweep range a,b (default -pi,pi)");
    rev->add_option("--grid", rev_grid, "mesh grid NxM (default 60x60)");
    rev->add_option("--out", rev_out, "mesh output (.obj or .csv)");
    rev->add_option("--report", rev_report, "write the JSON report here");

    // selftest
    auto* st = app.add_subcommand("selftest", "seeded randomized property checks");
    unsigned st_seed = 20240810;
    int st_samples = 2000;
    std::string st_report;
    st->add_option("--seed", st_seed, "RNG seed (default 20240810)");
    st->add_option("--samples", st_samples, "sample count (default 2000)");
    st->add_option("--out", st_report, "write the JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitError;
    }

    try {
        if (cat->parsed()) return run_catalog(cat_id, cat_report);
        if (chk->parsed())
            return run_check(chk_metric, parse_grid(chk_grid), chk_tol, chk_fd, chk_report);
        if (emb->parsed())
            return run_embed(emb_F, emb_G, emb_pq, emb_special, emb_uv, parse_grid(emb_grid),
                             emb_tol, emb_out, emb_report);
        if (cau->parsed()) {
            if (std::isfinite(cau_s0_raw)) cau_s0 = cau_s0_raw;
            if (std::isfinite(cau_v0_raw)) cau_v0 = cau_v0_raw;
            return run_cauchy(cau_curve, cau_t0, cau_r0, cau_s0, cau_v0, cau_method,
                              parse_grid(cau_grid), cau_trange, cau_told, cau_toli, cau_out,
                              cau_report);
        }
        if (rev->parsed())
            return run_revolve(rev_metric, rev_alpha, rev_beta, rev_srange, rev_trange,
                               parse_grid(rev_grid), rev_out, rev_report);
        if (st->parsed()) return run_selftest(st_seed, st_samples, st_report);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
