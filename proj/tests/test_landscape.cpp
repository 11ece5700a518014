#include <doctest.h>

#include <cmath>

#include "boreforge/landscape.hpp"
#include "support/oracles.hpp"

using namespace boreforge;

namespace {
PhysParams figure_params() { return PhysParams(2.0, 1.0, 0.125, 0.75, 0.0, 0.1); }
} // namespace

TEST_CASE("F vanishes at both equilibria") {
    oracle::Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        const PhysParams p(rng.uniform(0.1, 5), rng.uniform(0.1, 5), rng.uniform(0, 10),
                           rng.uniform(0.05, 0.95), 0.0, 0.1);
        const Landscape ls(p);
        CHECK(std::fabs(ls.F(ls.eq().rho_minus)) <= 1e-12);
        CHECK(std::fabs(ls.F(ls.eq().rho_plus)) <= 1e-12);
        // F > 0 strictly between (sampled)
        for (int k = 1; k < 20; ++k) {
            const double x = ls.eq().rho_minus
                           + k * (ls.eq().rho_plus - ls.eq().rho_minus) / 20.0;
            CHECK(ls.F(x) > 0.0);
        }
    }
}

TEST_CASE("G closed-form spot value") {
    const Landscape ls(figure_params());
    CHECK(ls.G(ls.eq().rho_minus) == doctest::Approx(287.0 / 768.0).epsilon(1e-14));
}

TEST_CASE("V spot value and quadrature cross-check") {
    const Landscape ls(figure_params());
    const double v_closed = ls.V(ls.eq().rho_plus);
    CHECK(v_closed == doctest::Approx(-(2.0 / 3.0) * (std::log(3.0) - 1.0)).epsilon(1e-12));
    CHECK(v_closed == doctest::Approx(-0.0657415257787397).epsilon(1e-10));
    CHECK(ls.v_cap(ls.eq().rho_plus) == doctest::Approx(0.3626059177088529).epsilon(1e-8));

    // adaptive quadrature oracle of -int F agrees with the closed form
    const double v_quad = -oracle::adaptive_simpson(
        [&](double s) { return ls.F(s); }, ls.eq().rho_minus, ls.eq().rho_plus, 1e-13);
    CHECK(std::fabs(v_closed - v_quad) < 1e-10);
}

TEST_CASE("V vanishes at rho_minus by definition") {
    const Landscape ls(figure_params());
    CHECK(std::fabs(ls.V(ls.eq().rho_minus)) < 1e-14);
}

TEST_CASE("rho_star against an independent bisection oracle") {
    const PhysParams p = figure_params();
    const double rs = find_rho_star(p);
    CHECK(rs == doctest::Approx(0.24601223159758973).epsilon(1e-10));
    CHECK(rs == doctest::Approx(0.24601).epsilon(5e-4)); // frozen oracle digits

    const Landscape ls(p);
    const double rs_oracle = oracle::bisect([&](double x) { return ls.V(x); },
                                            ls.eq().rho_plus, ls.eq().rho_plus + 2.0);
    CHECK(std::fabs(rs - rs_oracle) < 1e-10);
    CHECK(rs > ls.eq().rho_plus);
    CHECK(std::fabs(ls.V(rs)) <= 1e-12);
    // dV/dx(rho_star) = -F(rho_star) > 0 strictly
    CHECK(-ls.F(rs) > 0.0);
}

TEST_CASE("rho_star collapse in the small-bore limit") {
    const double A = 1.0 - 1e-6;
    const double rs = find_rho_star_of_A(A);
    const Equilibria eq = equilibria(A);
    CHECK(rs - eq.rho_plus > 0.0);
    CHECK(rs - eq.rho_plus < 1e-2);
}

TEST_CASE("classification of the reference parameter pairs") {
    CHECK(classify(0.125, 0.770).region == Region::C1);
    CHECK(classify(25.0, 0.855).region == Region::Cminus1);
    for (double A : {0.1, 0.3, 0.5, 0.7, 0.9})
        CHECK(classify(8.0, A).region == Region::Excluded);
}

TEST_CASE("classification boundaries at A = 3/4") {
    const ClassifyResult c = classify(0.2, 0.75);
    CHECK(c.boundaries.g_c1 == doctest::Approx(0.26890400018910776).epsilon(1e-9));
    CHECK(c.boundaries.g_cm1 == doctest::Approx(36.0).epsilon(1e-12));
    CHECK(classify(0.26, 0.75).region == Region::C1);
    CHECK(classify(0.28, 0.75).region == Region::Excluded);
    CHECK(classify(36.0001, 0.75).region == Region::Cminus1);
    // the computed boundary value itself classifies conservatively: Excluded
    CHECK(classify(c.boundaries.g_cm1, 0.75).region == Region::Excluded);
    CHECK(classify(c.boundaries.g_c1, 0.75).region == Region::Excluded);
}

TEST_CASE("boundary curves and their limits") {
    const auto rows = region_boundary_curve({0.25, 0.5, 0.75, 1.0 - 1e-8});
    for (const BoundaryRow& r : rows) CHECK(r.g_cm1 > r.g_c1);
    CHECK(rows[2].g_c1 == doctest::Approx(0.26890400018910776).epsilon(1e-9));
    CHECK(rows[2].g_cm1 == doctest::Approx(36.0).epsilon(1e-12));
    // both boundaries approach 8 in the small-bore limit
    CHECK(std::fabs(rows[3].g_c1 - 8.0) < 1e-2);
    CHECK(std::fabs(rows[3].g_cm1 - 8.0) < 1e-2);
}

TEST_CASE("dV/dx = -F by central differences") {
    const Landscape ls(figure_params());
    oracle::Rng rng(7);
    const double h = 1e-5;
    for (int i = 0; i < 100; ++i) {
        const double x = rng.uniform(ls.eq().rho_minus - 1.0, ls.rho_star() + 1.0);
        const double dv = (ls.V(x + h) - ls.V(x - h)) / (2.0 * h);
        CHECK(std::fabs(dv + ls.F(x)) < 1e-8);
    }
}

TEST_CASE("G strictly decreasing") {
    const Landscape ls(figure_params());
    oracle::Rng rng(11);
    for (int i = 0; i < 1000; ++i) {
        double x1 = rng.uniform(ls.eq().rho_minus - 2.0, ls.rho_star() + 2.0);
        double x2 = rng.uniform(ls.eq().rho_minus - 2.0, ls.rho_star() + 2.0);
        if (x1 == x2) continue;
        if (x1 > x2) std::swap(x1, x2);
        CHECK(ls.G(x1) > ls.G(x2));
    }
}

TEST_CASE("sign of G flips at rho_zero") {
    const Landscape ls(figure_params());
    REQUIRE(ls.rho_zero().has_value());
    const double r0 = *ls.rho_zero();
    CHECK(r0 == doctest::Approx(std::log(0.75 * 0.75 / 0.125) / 3.0).epsilon(1e-14));
    CHECK(std::fabs(ls.G(r0)) < 1e-12);
    oracle::Rng rng(13);
    for (int i = 0; i < 200; ++i) {
        const double x = rng.uniform(r0 - 3.0, r0 + 3.0);
        if (std::fabs(x - r0) < 1e-6) continue;
        CHECK((ls.G(x) > 0.0) == (x < r0));
    }
}

TEST_CASE("g = 0 leaves G positive and rho_zero absent") {
    const PhysParams p(2.0, 1.0, 0.0, 0.75, 0.0, 0.1);
    const Landscape ls(p);
    CHECK(!ls.rho_zero().has_value());
    CHECK(ls.region() == Region::C1);
    for (double x = -3.0; x < 3.0; x += 0.1) CHECK(ls.G(x) > 0.0);
}

TEST_CASE("classification consistent with direct G signs") {
    oracle::Rng rng(19);
    for (int i = 0; i < 100; ++i) {
        const double A = rng.uniform(0.05, 0.95);
        const double g = rng.uniform(0.0, 40.0);
        const ClassifyResult c = classify(g, A);
        const PhysParams p(1.0, 1.0, g, A, 0.0, 0.1);
        const Landscape ls(p);
        if (c.region == Region::C1) CHECK(ls.G(ls.rho_star()) > 0.0);
        if (c.region == Region::Cminus1) CHECK(ls.G(ls.eq().rho_minus) < 0.0);
    }
}

TEST_CASE("chirality mirrors the region and the G-sign conditions") {
    const Landscape eb(figure_params());
    CHECK(eb.chirality() == Chirality::Ebbing);
    const Landscape su(PhysParams(2.0, 1.0, 25.0, 0.855, 0.0, 0.1));
    CHECK(su.chirality() == Chirality::Surging);
    const Landscape ex(PhysParams(2.0, 1.0, 8.0, 0.5, 0.0, 0.1));
    CHECK(ex.chirality() == Chirality::Excluded);
}

TEST_CASE("velocity cap squares to -2V on the trapping interval") {
    const Landscape ls(figure_params());
    const double lo = ls.eq().rho_minus, hi = ls.rho_star();
    CHECK(std::fabs(ls.v_cap(lo)) < 1e-7);
    CHECK(std::fabs(ls.v_cap(hi)) < 1e-6);
    for (int k = 0; k <= 200; ++k) {
        const double x = lo + k * (hi - lo) / 200.0;
        const double vc = ls.v_cap(x);
        CHECK(std::fabs(vc * vc + 2.0 * ls.V(x)) <= 1e-12);
        if (k > 0 && k < 200) CHECK(vc > 0.0);
    }
}
