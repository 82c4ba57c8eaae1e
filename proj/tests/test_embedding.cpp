#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "darboux/embedding.hpp"

using namespace darboux;

namespace {

// Random generator polynomial of degree 3..5 with positive third derivative
// on [a,b]; retries until the positivity check passes.
Smooth1D random_generator_poly(std::mt19937& rng, double a, double b) {
    std::uniform_real_distribution<double> coeff(-0.4, 0.4);
    std::uniform_int_distribution<int> deg(3, 5);
    while (true) {
        const int d = deg(rng);
        std::vector<double> c(static_cast<std::size_t>(d) + 1);
        for (double& x : c) x = coeff(rng);
        c[3] = 0.3 + std::abs(c[3]);  // positive-leading cubic part
        if (d >= 4) c[4] *= 0.05;
        if (d >= 5) c[5] *= 0.01;
        const Poly1D p(c);
        bool ok = true;
        for (int i = 0; i <= 60 && ok; ++i)
            ok = p.deriv(a + (b - a) * i / 60.0, 3) > 1e-3;
        if (ok) return Smooth1D(p);
    }
}

}  // namespace

TEST_CASE("singular curves from a generator") {
    // F = p^3/48 has F''' = 1/8, so p0 = 1.
    const Smooth1D F = Smooth1D::poly({0, 0, 0, 1.0 / 48.0});
    const SingularCurve sp(CurveSide::plus, F, -1.0, 2.5);

    SECTION("hand values at p = 1") {
        const SingularCurvePoint s = sp.at(1.0);
        CHECK(s.scale == Catch::Approx(1.0));
        CHECK(s.y.x == Catch::Approx(-1.0 / 6.0));
        // y2 = -(p^2-1) F'' + 2p F' - 2F = 0 + 1/8 - 1/24 = 1/12
        CHECK(s.y.y == Catch::Approx(1.0 / 12.0));
        // y3 = 2p F'' - 2F' = 1/4 - 1/8 = 1/8
        CHECK(s.y.z == Catch::Approx(0.125));
    }

    SECTION("v-quadrature of a constant integrand") {
        CHECK(sp.at(2.0).v - sp.at(0.0).v == Catch::Approx(-1.0).margin(1e-12));
    }

    SECTION("curve satisfies the characteristic ODE system") {
        const double h = 1e-6;
        for (double p : {-0.5, 0.3, 1.7}) {
            const auto m = sp.at(p - h), c = sp.at(p), pl = sp.at(p + h);
            const double p04 = std::pow(c.scale, 4);
            CHECK((pl.y.x - m.y.x) / (2 * h) ==
                  Catch::Approx(-0.125 * (p * p + 1) * p04).margin(1e-8));
            CHECK((pl.y.y - m.y.y) / (2 * h) ==
                  Catch::Approx(-0.125 * (p * p - 1) * p04).margin(1e-8));
            CHECK((pl.y.z - m.y.z) / (2 * h) == Catch::Approx(0.25 * p * p04).margin(1e-8));
            CHECK((pl.v - m.v) / (2 * h) ==
                  Catch::Approx(-0.5 * c.scale * c.scale).margin(1e-8));
        }
    }

    SECTION("negative third derivative is rejected") {
        CHECK_THROWS_AS(SingularCurve(CurveSide::plus, Smooth1D::poly({0, 1.0}), 0.0, 1.0),
                        std::invalid_argument);
    }

    SECTION("minus side satisfies its ODE system") {
        const Smooth1D G = Smooth1D::poly({0, 0, 0, 1.0 / 3.0});  // G''' = 2
        const SingularCurve sm(CurveSide::minus, G, 0.5, 3.0);
        const double h = 1e-6;
        for (double q : {1.0, 2.2}) {
            const auto m = sm.at(q - h), c = sm.at(q), pl = sm.at(q + h);
            const double q04 = std::pow(c.scale, 4);
            CHECK((pl.y.x - m.y.x) / (2 * h) ==
                  Catch::Approx(0.125 * (q * q + 1) * q04).margin(1e-7));
            CHECK((pl.v - m.v) / (2 * h) == Catch::Approx(0.5 * c.scale * c.scale).margin(1e-8));
        }
    }
}

TEST_CASE("superposition") {
    const Smooth1D F = Smooth1D::poly({0, 0, 0, 1.0 / 48.0});
    const SingularCurve sp(CurveSide::plus, F, -1.0, 2.0);

    SECTION("adding a zero minus-sample is the identity on the fiber") {
        SingularCurvePoint zero;
        zero.side = CurveSide::minus;
        zero.par = 3.0;  // q value away from p
        zero.scale = 1.0;
        zero.v = 0.0;
        zero.y = {0, 0, 0};
        const auto s = sp.at(0.5);
        const N2Point n = superpose(s, zero);
        CHECK(n.v == s.v);
        CHECK(n.y.x == s.y.x);
        CHECK(n.y.y == s.y.y);
        CHECK(n.y.z == s.y.z);
    }

    SECTION("constant shifts cancel") {
        SingularCurvePoint a = sp.at(0.2);
        SingularCurvePoint b;
        b.side = CurveSide::minus;
        b.par = 2.5;
        b.scale = 0.7;
        b.v = 0.4;
        b.y = {1.0, -2.0, 0.5};
        const N2Point base = superpose(a, b);
        const double c = 0.37;
        SingularCurvePoint a2 = a, b2 = b;
        a2.v += c;
        b2.v -= c;
        a2.y.x += 2 * c;
        b2.y.x -= 2 * c;
        const N2Point shifted = superpose(a2, b2);
        CHECK(shifted.v == Catch::Approx(base.v));
        CHECK(shifted.y.x == Catch::Approx(base.y.x));
    }

    SECTION("mismatched sides are rejected") {
        CHECK_THROWS_AS(superpose(sp.at(0.1), sp.at(0.2)), std::invalid_argument);
    }
}

TEST_CASE("general embedding from cubic generators") {
    // F = p^3/48 (eps1 = 1), G = 16 q^3/48 (eps2 = 2).
    const GeneratorPair gp = cubic_generator_pair(1.0, 2.0, -2.0, 0.5, 0.6, 3.0);

    SECTION("hand values at (p,q) = (0,1)") {
        const EmbeddingPoint e = embed_from_generators(gp, 0.0, 1.0);
        CHECK(e.x.x == Catch::Approx(13.0 / 6.0).margin(1e-12));
        CHECK(e.x.y == Catch::Approx(-5.0 / 6.0).margin(1e-12));
        CHECK(e.x.z == Catch::Approx(-1.5).margin(1e-12));
        CHECK(e.u == Catch::Approx(1.0).margin(1e-12));
        CHECK(e.v == Catch::Approx(2.0).margin(1e-10));
    }

    SECTION("hand values at (p,q) = (1,2)") {
        // p is outside the pair's p-domain used elsewhere; build a wider one.
        const GeneratorPair wide = cubic_generator_pair(1.0, 2.0, -2.0, 1.5, 0.6, 3.0);
        const EmbeddingPoint e = embed_from_generators(wide, 1.0, 2.0);
        CHECK(e.x.x == Catch::Approx(23.0 / 3.0).margin(1e-12));
        CHECK(e.u == Catch::Approx(1.0).margin(1e-12));
        CHECK(e.v == Catch::Approx(3.5).margin(1e-10));
    }

    SECTION("matches the superposition + chart route") {
        std::mt19937 rng(55);
        std::uniform_real_distribution<double> dp(-2.0, 0.5), dq(0.6, 3.0);
        for (int i = 0; i < 50; ++i) {
            const double p = dp(rng), q = dq(rng);
            const EmbeddingPoint e = embed_from_generators(gp, p, q);
            const PQPoint n1 = psi_inverse(superpose(gp.plus().at(p), gp.minus().at(q)));
            REQUIRE(std::abs(n1.x.x - e.x.x) < 1e-10);
            REQUIRE(std::abs(n1.x.y - e.x.y) < 1e-10);
            REQUIRE(std::abs(n1.x.z - e.x.z) < 1e-10);
        }
    }

    SECTION("u is antisymmetric under (p,q) swap when F = G") {
        const GeneratorPair sym(Smooth1D::poly({0, 0, 0, 0.25}), Smooth1D::poly({0, 0, 0, 0.25}),
                                -3.0, 3.0, -3.0, 3.0);
        CHECK(embed_from_generators(sym, -1.0, 2.0).u ==
              Catch::Approx(-embed_from_generators(sym, 2.0, -1.0).u));
    }

    SECTION("p = q is rejected") {
        const GeneratorPair sym(Smooth1D::poly({0, 0, 0, 0.25}), Smooth1D::poly({0, 0, 0, 0.25}),
                                -3.0, 3.0, -3.0, 3.0);
        CHECK_THROWS_AS(embed_from_generators(sym, 1.0, 1.0), OutOfChartError);
    }
}

TEST_CASE("constant-generator immersion in (u,v)") {
    SECTION("hand value at (1,2,1,2)") {
        const Vec3 x = special_embedding(1.0, 2.0, 1.0, 2.0);
        CHECK(x.x == Catch::Approx(13.0 / 6.0).margin(1e-12));
        CHECK(x.y == Catch::Approx(-5.0 / 6.0).margin(1e-12));
        CHECK(x.z == Catch::Approx(-1.5).margin(1e-12));
    }

    SECTION("origin maps to the origin") {
        const Vec3 x = special_embedding(1.0, 4.0, 0.0, 0.0);
        CHECK(x.x == 0.0);
        CHECK(x.y == 0.0);
        CHECK(x.z == 0.0);
    }

    SECTION("equal parameters are rejected") {
        CHECK_THROWS_AS(special_embedding(2.0, 2.0, 0.1, 0.1), std::invalid_argument);
        CHECK_THROWS_AS(special_embedding(2.0, -2.0, 0.1, 0.1), std::invalid_argument);
    }

    SECTION("agrees with the generator route through the chart inversion") {
        const double e1 = 1.0, e2 = 2.0;
        const GeneratorPair gp = cubic_generator_pair(e1, e2, -4.0, 4.0, -4.0, 4.0);
        std::mt19937 rng(321);
        std::uniform_real_distribution<double> duv(-1.2, 1.2);
        for (int i = 0; i < 50; ++i) {
            const double u = 0.3 + std::abs(duv(rng)), v = duv(rng);
            // Invert u = eps1 eps2 (q-p)/2, v = (eps2^2 q - eps1^2 p)/2.
            const double p = 2.0 * (e1 * v - e2 * u) / (e1 * (e2 * e2 - e1 * e1));
            const double q = p + 2.0 * u / (e1 * e2);
            const EmbeddingPoint e = embed_from_generators(gp, p, q);
            const Vec3 xs = special_embedding(e1, e2, u, v);
            REQUIRE(e.u == Catch::Approx(u).margin(1e-10));
            REQUIRE(e.v == Catch::Approx(v).margin(1e-9));
            REQUIRE(std::abs(e.x.x - xs.x) < 1e-9);
            REQUIRE(std::abs(e.x.y - xs.y) < 1e-9);
            REQUIRE(std::abs(e.x.z - xs.z) < 1e-9);
        }
    }

    SECTION("isometry residual over a grid crossing the degenerate axis") {
        const SpecialMeshResult r = mesh_special(1.0, 4.0, DomainRect{-1, 1, -1, 1}, 21, 21);
        CHECK(r.verify.max_isom < 1e-6);
    }
}

TEST_CASE("generator meshes verify against the pullback") {
    SECTION("cubic pair: isometry, curvature, contact forms") {
        const GeneratorPair gp = cubic_generator_pair(1.0, 2.0, -2.0, 0.5, 0.6, 3.0);
        const GeneratorMeshResult r = mesh_from_generators(gp, 25, 25);
        CHECK(r.verify.max_isom < 1e-6);
        CHECK(r.verify.max_K < 1e-3);
        for (double t : r.max_pfaffian) CHECK(t < 1e-4);
        CHECK(r.jacobian_sign_changes == 0);
        CHECK(r.mesh.has_frames());
    }

    SECTION("random generator pairs: induced form equals the pullback") {
        std::mt19937 rng(60321);
        for (int trial = 0; trial < 5; ++trial) {
            const GeneratorPair gp(random_generator_poly(rng, -1.5, -0.2),
                                   random_generator_poly(rng, 0.2, 1.5), -1.5, -0.2, 0.2, 1.5);
            PositionMap pos = [&gp](double p, double q) {
                return embed_from_generators(gp, p, q).x;
            };
            TargetForm target = [&gp](double p, double q) { return g0_pullback_pq(gp, p, q); };
            std::uniform_real_distribution<double> dp(-1.3, -0.4), dq(0.4, 1.3);
            for (int i = 0; i < 10; ++i) {
                const double p = dp(rng), q = dq(rng);
                const auto res =
                    isometry_residuals(pos, Signature::lorentz(), target, p, q, 1e-5);
                REQUIRE(std::max({res[0], res[1], res[2]}) < 1e-5);
                // The differenced and closed-form pullback routes agree;
                // the FD route differences the v-quadrature (tol 1e-12)
                // over 2e-6, so ~1e-6 is its accuracy floor.
                const auto fd = g0_pullback_pq(gp, p, q);
                const auto exact = g0_pullback_pq_exact(gp, p, q);
                for (int k = 0; k < 3; ++k)
                    REQUIRE(std::abs(fd[static_cast<std::size_t>(k)] -
                                     exact[static_cast<std::size_t>(k)]) < 2e-6);
            }
        }
    }
}

TEST_CASE("alternative-route cross checks are reproduced") {
    const EmbeddingErrata flags = compute_embedding_errata();
    CHECK(flags.uv_chart_scale);
    CHECK(flags.special_example_x1x2);
}
