#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "darboux/catalog.hpp"
#include "darboux/checker.hpp"
#include "darboux/curvature_jet.hpp"

using namespace darboux;

TEST_CASE("curvature jet spot values") {
    SECTION("g0 = u^2 (dv^2 - du^2) at u = 2") {
        const auto& m = catalog(MetricId::LH_T3).metric;
        const CurvatureJet j = curvature_jet(m, 2.0, 0.0);
        CHECK(j.K == Catch::Approx(-1.0 / 16.0).epsilon(1e-12));
        CHECK(j.q == Catch::Approx(8.0).epsilon(1e-12));
        CHECK(j.epsilon == -1);
        // q11 = 3 eps q^(-1/3) = -3/2; hand chain rule gives q11 = -3/u.
        CHECK(j.q11 == Catch::Approx(-1.5).margin(1e-5));
        for (double r : q_condition_residuals(j)) CHECK(std::abs(r) < 1e-5);
        // First covariant derivatives of k, hand values k1 = 0, k2 = -2 u^-4.
        CHECK(j.k1 == Catch::Approx(0.0).margin(1e-8));
        CHECK(j.k2 == Catch::Approx(-2.0 / 16.0).margin(1e-8));
    }

    SECTION("R1 satisfies the elliptic conditions") {
        const auto& m = catalog(MetricId::R1).metric;
        const CurvatureJet j = curvature_jet(m, 1.0, 0.2);
        CHECK(j.epsilon == 1);
        for (double r : q_condition_residuals(j)) CHECK(std::abs(r) < 1e-5);
    }

    SECTION("round sphere: constant q fails the conditions") {
        const OrthogonalMetric2D sphere = make_round_sphere();
        const CurvatureJet j = curvature_jet(sphere, 1.2, 0.0);
        CHECK(j.q == Catch::Approx(1.0).margin(1e-9));
        CHECK(std::abs(j.q11) < 1e-6);
        const auto res = q_condition_residuals(j);
        CHECK(std::abs(res[0]) == Catch::Approx(3.0).margin(1e-5));  // 0 - 3 q^(-1/3)
    }

    SECTION("flat point raises") {
        CHECK_THROWS_AS(curvature_jet(make_flat_plane(), 0.0, 0.0), FlatPointError);
    }

    SECTION("torsion-free symmetry q12 = q21 on Riemannian inputs") {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> du(0.3, 1.8);
        for (int i = 0; i < 20; ++i) {
            const CurvatureJet j = curvature_jet(catalog(MetricId::R2).metric, du(rng), 0.0);
            CHECK(j.q12 == Catch::Approx(j.q21).margin(1e-7));
        }
    }
}

TEST_CASE("k-form conditions agree with the q-form") {
    SECTION("R4 at u = 0.5") {
        const auto res = k_condition_residuals(catalog(MetricId::R4).metric, 0.5, 0.0);
        for (double r : res) CHECK(std::abs(r) < 1e-5);
    }
    SECTION("R2 at u = 1") {
        const auto res = k_condition_residuals(catalog(MetricId::R2).metric, 1.0, 0.0);
        for (double r : res) CHECK(std::abs(r) < 1e-5);
    }
    SECTION("sphere: residual is the -2k^3 term") {
        const CurvatureJet j = curvature_jet(make_round_sphere(), 1.0, 0.0);
        const auto res = k_condition_residuals(j);
        CHECK(std::abs(res[0]) == Catch::Approx(2.0).margin(1e-6));
    }
    SECTION("equivalence on all catalog metrics at 50 random points") {
        std::mt19937 rng(99);
        for (const auto& c : normal_form_catalog()) {
            const DomainRect& d = c.metric.domain();
            std::uniform_real_distribution<double> du(d.u_min + 0.02 * (d.u_max - d.u_min),
                                                      d.u_max - 0.02 * (d.u_max - d.u_min));
            for (int i = 0; i < 50; ++i) {
                const CurvatureJet j = curvature_jet(c.metric, du(rng), 0.0);
                // Near the singular chart edges k^3 reaches 1e12, so the
                // k-form is compared relative to the size of its terms.
                const double k_scale = std::max(1.0, 2.0 * std::abs(j.k * j.k * j.k));
                bool q_ok = true, k_ok = true;
                for (double r : q_condition_residuals(j)) q_ok = q_ok && std::abs(r) < 1e-4;
                for (double r : k_condition_residuals(j))
                    k_ok = k_ok && std::abs(r) < 1e-4 * k_scale;
                REQUIRE(q_ok);
                REQUIRE(k_ok);
            }
        }
    }
}

TEST_CASE("frame rotation leaves Riemannian residuals unchanged") {
    std::mt19937 rng(5150);
    std::uniform_real_distribution<double> dth(0.0, 6.28);
    for (MetricId id : {MetricId::R1, MetricId::R2, MetricId::R3, MetricId::R4}) {
        const auto& m = catalog(id).metric;
        const double u = 0.5 * (m.domain().u_min + m.domain().u_max);
        const CurvatureJet j = curvature_jet(m, u, 0.0);
        const auto base = q_condition_residuals(j);
        for (int i = 0; i < 5; ++i) {
            const CurvatureJet jr = rotate_frame(j, dth(rng));
            const auto rot = q_condition_residuals(jr);
            for (int kk = 0; kk < 4; ++kk)
                CHECK(std::abs(rot[kk] - base[kk]) < 1e-6);
        }
    }
    CHECK_THROWS_AS(rotate_frame(curvature_jet(catalog(MetricId::LH_T3).metric, 1.0, 0.0), 0.3),
                    std::invalid_argument);
}

TEST_CASE("check_integrability verdicts") {
    SECTION("every catalog id passes on a 20x20 interior grid") {
        for (const auto& c : normal_form_catalog()) {
            const DarbouxReport rep = check_integrability(c.metric, 20, 20, 1e-4);
            INFO(c.name << " max residual " << rep.max_residual);
            CHECK(rep.verdict);
            CHECK(rep.max_residual < 1e-5);
            CHECK(rep.epsilon == c.epsilon);
        }
    }

    SECTION("constant-curvature metrics fail") {
        CHECK_FALSE(check_integrability(make_round_sphere(), 10, 10, 1e-4).verdict);
        CHECK_FALSE(check_integrability(make_hyperbolic_plane(), 10, 10, 1e-4).verdict);
    }

    SECTION("perturbed R1 fails with large residuals") {
        const DarbouxReport rep = check_integrability(make_perturbed_r1(0.1), 10, 10, 1e-4);
        CHECK_FALSE(rep.verdict);
        CHECK(rep.max_residual > 1e-2);
    }

    SECTION("flat point inside the grid raises") {
        CHECK_THROWS_AS(check_integrability(make_flat_plane(), 5, 5, 1e-4), FlatPointError);
    }

    SECTION("sign change of K raises the mixed-type error") {
        // Gv = sin(u) cosh(u) makes K change sign inside (0.3, 2.6).
        auto Gv = Smooth1D(Smooth1D::Analytic{[](const Jet6& u) { return sin(u) * cosh(u); }});
        OrthogonalMetric2D m(Smooth2D::of_u(Smooth1D::constant(1.0)), Smooth2D::of_u(Gv), 1, 1,
                             DomainRect{0.3, 2.6, -1, 1}, true);
        CHECK_THROWS_AS(check_integrability(m, 8, 8, 1e-4), MixedTypeError);
    }

    SECTION("bad arguments") {
        CHECK_THROWS_AS(check_integrability(make_round_sphere(), 1, 5, 1e-4),
                        std::invalid_argument);
        CHECK_THROWS_AS(check_integrability(make_round_sphere(), 5, 5, -1.0),
                        std::invalid_argument);
    }
}
