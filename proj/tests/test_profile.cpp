#include <doctest.h>

#include <cmath>

#include "boreforge/shallow_profile.hpp"
#include "support/oracles.hpp"

using namespace boreforge;

namespace {
PhysParams ebbing_params() { return PhysParams(2.0, 1.0, 0.125, 0.75, 0.0, 0.1); }

ShallowProfile make_profile(const PhysParams& p) {
    const Landscape ls(p);
    return build_profile(shoot_heteroclinic(p, ls), p);
}
} // namespace

TEST_CASE("constant-state bundle values") {
    // a = mu, A = 3/4, H = H_+ = 3/4: closed forms at the equilibrium
    const PhysParams p(1.0, 1.0, 0.125, 0.75, 0.0, 0.1);
    const ShallowProfile prof = make_profile(p);
    const ProfileSample s = prof.from_state(std::log(0.75), 0.0);
    CHECK(s.U == doctest::Approx(3.0).epsilon(1e-14));       // 4 H_+
    CHECK(s.Up == doctest::Approx(0.0));
    CHECK(s.P == doctest::Approx(0.125 * 0.75).epsilon(1e-14));
    CHECK(s.U2 == doctest::Approx(-4.0).epsilon(1e-13)); // -(4/H - A/H^2) at a = mu
    CHECK(s.U1 == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(s.P1 == doctest::Approx(0.0));
    CHECK(s.P2 == doctest::Approx(0.0));
}

TEST_CASE("flux algebra is exact along the orbit") {
    const PhysParams p = ebbing_params();
    const ShallowProfile prof = make_profile(p);
    const OrbitSolution& orb = prof.orbit();
    for (std::size_t k = 0; k < orb.t.size(); k += 7) {
        const ProfileSample s = prof.from_state(orb.rho[k], orb.rho_prime[k]);
        CHECK((4.0 - s.U) * s.H == doctest::Approx(p.A).epsilon(1e-15));
    }
}

TEST_CASE("endpoint limits of the seven profiles") {
    const PhysParams p = ebbing_params();
    const ShallowProfile prof = make_profile(p);
    const ProfileVerification v = verify_shallow_water(prof);
    CHECK(v.limit_defect <= 1e-6);

    // spot value: downstream pressure limit g H_+
    const ProfileSample lim = prof.limit(false);
    CHECK(lim.P == doctest::Approx(0.125 * 0.75).epsilon(1e-12));
    // upstream/downstream U2 limit: -(a/mu)(4/H - A/H^2) = -4 a/mu both ends
    CHECK(lim.U2 == doctest::Approx(-4.0 * p.a / p.mu).epsilon(1e-10));
}

TEST_CASE("mass and momentum residuals of the sampled trajectory") {
    const PhysParams p = ebbing_params();
    const ShallowProfile prof = make_profile(p);
    const ProfileVerification v = verify_shallow_water(prof);
    CHECK(v.mass_sup <= 1e-14);
    CHECK(v.momentum_sup <= 1e-5);
}

TEST_CASE("height-form equation residual") {
    const PhysParams p = ebbing_params();
    const ShallowProfile prof = make_profile(p);
    const LienardEquivalenceReport rep = verify_lienard_equivalence(prof);
    CHECK(rep.hform_sup <= 1e-5);
}

TEST_CASE("constant equilibrium state gives zero residuals") {
    const PhysParams p = ebbing_params();
    const ShallowProfile prof = make_profile(p);
    // residual of the H-form at the exact equilibrium state is identically 0
    const ProfileSample s = prof.from_state(std::log(0.75), 0.0);
    const double r = 4.0 * p.a * (1.0 - s.H - p.A / (4.0 * s.H));
    CHECK(std::fabs(r) <= 1e-14);
}

TEST_CASE("joint (mu, a) scaling keeps the residual criterion") {
    const PhysParams p(4.0, 2.0, 0.125, 0.75, 0.0, 0.1); // doubled mu and a
    const ShallowProfile prof = make_profile(p);
    CHECK(verify_shallow_water(prof).momentum_sup <= 1e-5);
    CHECK(verify_lienard_equivalence(prof).hform_sup <= 1e-5);
}

TEST_CASE("profile bounds along the orbit") {
    const PhysParams p = ebbing_params();
    const Landscape ls(p);
    const OrbitSolution orb = shoot_heteroclinic(p, ls);
    const ShallowProfile prof = build_profile(orb, p);
    const double h_cap = std::exp(ls.rho_star());
    const double u_floor = p.A / h_cap;
    for (std::size_t k = 0; k < orb.t.size(); k += 3) {
        const ProfileSample s = prof.from_state(orb.rho[k], orb.rho_prime[k]);
        CHECK(s.H >= ls.eq().h_minus - 1e-6);
        CHECK(s.H <= h_cap + 1e-6);
        CHECK(s.U < 4.0);
        CHECK(4.0 - s.U >= u_floor - 1e-6);
    }
}

TEST_CASE("degenerate orbit rejected") {
    const PhysParams p = ebbing_params();
    const Landscape ls(p);
    OrbitSolution orb = shoot_heteroclinic(p, ls);
    orb.t.resize(3);
    orb.rho.resize(3);
    orb.rho_prime.resize(3);
    CHECK_THROWS_AS(build_profile(orb, p), std::runtime_error);
}
