// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Tolerances are pinned in code, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "boreforge/io.hpp"
#include "boreforge/ns_residual.hpp"
#include "boreforge/perturb.hpp"
#include "support/oracles.hpp"

using namespace boreforge;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int id, bool ok, const std::string& what, double secs, double limit) {
    const bool in_time = limit <= 0.0 || secs <= limit;
    if (!ok || !in_time) ++failures;
    std::printf("%s  criterion %2d: %s (%.2fs%s)\n", ok && in_time ? "PASS" : "FAIL", id,
                what.c_str(), secs, in_time ? "" : " OVER TIME LIMIT");
    std::fflush(stdout);
}

struct SampledPoint {
    PhysParams params;
    Region region;
};

// deterministic random parameter sets inside each region, margins away from
// the boundaries
std::vector<SampledPoint> region_samples(std::size_t n_each) {
    std::vector<SampledPoint> pts;
    oracle::Rng rng(20260810);
    while (pts.size() < n_each) {
        const double A = rng.uniform(0.15, 0.95);
        const ClassifyResult c = classify(0.0, A);
        const double g = rng.uniform(0.05, 0.8) * c.boundaries.g_c1;
        const double mu = rng.uniform(0.5, 4.0);
        const double a = rng.uniform(0.5, 4.0);
        pts.push_back({PhysParams(mu, a, g, A, 0.0, 0.1), Region::C1});
    }
    while (pts.size() < 2 * n_each) {
        const double A = rng.uniform(0.15, 0.95);
        const ClassifyResult c = classify(0.0, A);
        const double g = rng.uniform(1.2, 5.0) * c.boundaries.g_cm1;
        const double mu = rng.uniform(0.5, 4.0);
        const double a = rng.uniform(0.5, 4.0);
        pts.push_back({PhysParams(mu, a, g, A, 0.0, 0.1), Region::Cminus1});
    }
    return pts;
}

void criterion_1() {
    Timer t;
    bool ok = classify(0.125, 0.770).region == Region::C1
           && classify(25.0, 0.855).region == Region::Cminus1;
    for (double A : {0.1, 0.3, 0.5, 0.7, 0.9})
        ok = ok && classify(8.0, A).region == Region::Excluded;
    report(1, ok, "region reproduction at the reference parameter pairs", t.seconds(), 1.0);
}

void criterion_2() {
    Timer t;
    bool ok = true;
    oracle::Rng rng(42);
    for (int i = 0; i < 10000 && ok; ++i) {
        const double A = rng.uniform(1e-6, 1.0 - 1e-6);
        const Equilibria eq = equilibria(A);
        ok = std::fabs(eq.h_minus + eq.h_plus - 1.0) <= 1e-12
          && std::fabs(4.0 * eq.h_plus - 4.0 * eq.h_plus * eq.h_plus - A) <= 1e-12
          && std::fabs(4.0 * eq.h_minus - 4.0 * eq.h_minus * eq.h_minus - A) <= 1e-12;
    }
    for (int i = 0; i < 2000 && ok; ++i) {
        const PhysParams p(rng.uniform(0.1, 10.0), rng.uniform(0.1, 10.0), 1.0,
                           rng.uniform(0.01, 0.99), 0.0, rng.uniform(0.01, 0.9));
        const TunedConstants tc = tune(p);
        const Equilibria eq = equilibria(p.A);
        const double scale = std::max(1.0, std::fabs(tc.A_hat));
        ok = std::fabs(flux_cubic(p, tc, eq.h_plus) - tc.A_hat) <= 1e-12 * scale
          && std::fabs(flux_cubic(p, tc, eq.h_minus) - tc.A_hat) <= 1e-12 * scale;
    }
    report(2, ok, "equilibrium algebra and tuned cubic across random parameters",
           t.seconds(), 1.0);
}

// Criteria 3, 5, and 9 all quantify the same 100-orbit ensemble; one
// streaming pass keeps the memory of large-span orbits bounded.
void criteria_3_5_9() {
    Timer t3;
    bool ok3 = true, ok5 = true, ok9 = true;
    std::string detail3;
    double secs5 = 0.0, secs9 = 0.0;
    double worst_mass = 0.0, worst_mom = 0.0, worst_h = 0.0;
    const std::vector<SampledPoint> pts = region_samples(50);
    for (const SampledPoint& pt : pts) {
        try {
            const Landscape ls(pt.params);
            const OrbitSolution orb = shoot_heteroclinic(pt.params, ls);
            const EnergyAuditReport audit = energy_audit(orb, ls);
            const bool good = orb.endpoint_error < 1e-8 && orb.trap_violation < 1e-6
                           && audit.relative_defect < 1e-6;
            if (!good && ok3) {
                ok3 = false;
                detail3 = " first failure: mu=" + format_g17(pt.params.mu)
                        + " a=" + format_g17(pt.params.a) + " g=" + format_g17(pt.params.g)
                        + " A=" + format_g17(pt.params.A);
            }

            Timer t5;
            const ShallowProfile prof = build_profile(orb, pt.params);
            const ProfileVerification v = verify_shallow_water(prof);
            const LienardEquivalenceReport h = verify_lienard_equivalence(prof);
            worst_mass = std::max(worst_mass, v.mass_sup);
            worst_mom = std::max(worst_mom, v.momentum_sup);
            worst_h = std::max(worst_h, h.hform_sup);
            ok5 = ok5 && v.mass_sup <= 1e-13 && v.momentum_sup <= 1e-5
               && h.hform_sup <= 1e-5;
            secs5 += t5.seconds();

            Timer t9;
            const FroudeResult fr = froude(pt.params);
            if (orb.chirality < 0) ok9 = ok9 && fr.value < 1.0;
            else ok9 = ok9 && (fr.value > 1.0 || fr.supercritical_limit);
            secs9 += t9.seconds();
        } catch (const std::exception& e) {
            ok3 = false;
            detail3 = std::string(" exception: ") + e.what();
        }
    }
    report(3, ok3,
           "heteroclinic existence at 100 random region points (endpoint 1e-8, trap 1e-6, "
           "energy 1e-6)" + detail3,
           t3.seconds() - secs5 - secs9, 60.0);
    report(5, ok5,
           "shallow-water system residuals on all 100 orbits (mass " + format_g17(worst_mass)
               + ", momentum " + format_g17(worst_mom) + ", H-form " + format_g17(worst_h)
               + ")",
           secs5, 0.0);
    report(9, ok9, "chirality/Froude law across the 100 orbits, zero exceptions", secs9, 0.0);
}

void criterion_4() {
    Timer t;
    bool ok = true;
    const std::vector<SampledPoint> pts = region_samples(5);
    for (const SampledPoint& pt : pts) {
        const Landscape ls(pt.params);
        ShootOpts o1, o2;
        o1.seed_offset = 1e-8;
        o2.seed_offset = 1e-9;
        const OrbitSolution a = shoot_heteroclinic(pt.params, ls, o1);
        const OrbitSolution b = shoot_heteroclinic(pt.params, ls, o2);
        const double lo = std::max(a.t_begin(), b.t_begin());
        const double hi = std::min(a.t_end(), b.t_end());
        double sup = 0.0;
        for (double tt = lo; tt <= hi; tt += 0.1)
            sup = std::max(sup, std::fabs(a.rho_at(tt) - b.rho_at(tt)));
        ok = ok && sup <= 1e-6;
    }
    report(4, ok, "translation-normalized orbit stable under seed-offset halving (1e-6)",
           t.seconds(), 0.0);
}

void criterion_6() {
    Timer t;
    const PhysParams p(2.0, 1.0, 0.125, 0.75, 0.0, 0.1);
    const Landscape ls(p);
    const OrbitSolution orb = shoot_heteroclinic(p, ls);
    const ShallowProfile prof = build_profile(orb, p);
    const auto [lo, hi] = residual_window(orb, 1e-4);
    auto div_at = [&](std::size_t n) {
        GridSpec spec;
        spec.nx = n;
        spec.ny = 33;
        spec.x_min = lo;
        spec.x_max = hi;
        const FieldGrid g = reconstruct(prof, p, spec);
        return divergence_check(g, geometry_ops(g));
    };
    const double coarse = div_at(257), fine = div_at(513);
    const double order = std::log2(coarse / fine);
    const FieldGrid shear = shear_flow_exact(p, equilibria(p.A).h_plus, 65, 33, 5.0);
    const double const_div = divergence_check(shear, geometry_ops(shear));
    const bool ok = order >= 3.5 && const_div <= 1e-13;
    report(6, ok,
           "divergence-free ansatz: measured order " + format_g17(order)
               + " under doubling, constant-state divergence " + format_g17(const_div),
           t.seconds(), 0.0);
}

void criterion_7() {
    Timer t;
    bool ok = true;
    double worst = 0.0;
    for (double eps : {0.05, 0.1, 0.2}) {
        const PhysParams p(2.0, 1.0, 0.125, 0.75, 0.0, eps);
        const Equilibria eq = equilibria(p.A);
        for (double H : {eq.h_plus, eq.h_minus}) {
            const FieldGrid g = shear_flow_exact(p, H, 256, 256, 10.0);
            const ResidualReport r = evaluate_residuals(g, geometry_ops(g), p);
            const double m = std::max({r.momentum1.sup, r.momentum2.sup, r.divergence_sup,
                                       r.stress_bc1.sup, r.stress_bc2.sup, r.slip_bc.sup,
                                       r.flux_eq.sup});
            worst = std::max(worst, m);
            ok = ok && m <= 1e-8;
        }
    }
    report(7, ok, "exact shear golden test at 256x256 (worst residual " + format_g17(worst)
                      + ")",
           t.seconds(), 0.0);
}

void criterion_8() {
    Timer t;
    const PhysParams base(2.0, 1.0, 0.125, 0.75, 0.0, 0.1);
    const Landscape ls(base);
    const OrbitSolution orb = shoot_heteroclinic(base, ls);
    const auto rows = eps_sweep(orb, base, {0.2, 0.1, 0.05});
    bool ok = rows.size() == 3;
    double min_order = 1e300;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        min_order = std::min(min_order, rows[k].fitted_order);
        ok = ok && rows[k].fitted_order >= 1.0
          && rows[k].momentum1_l2 < rows[k - 1].momentum1_l2;
    }
    report(8, ok,
           "leading-order NS residual eps-scaling, fitted order "
               + format_g17(min_order) + " (>= 1)",
           t.seconds(), 120.0);
}

void criterion_10() {
    Timer t;
    bool ok = true;
    std::string detail;
    const PhysParams p(2.0, 1.0, 0.125, 0.75, 0.0, 0.1);
    const Landscape ls(p);
    const OrbitSolution orb = shoot_heteroclinic(p, ls);

    const PerturbationFn zero = [](double, double, const Vec2&) -> Vec2 { return {0, 0}; };
    const PerturbedBoreResult idem = perturbed_bore(orb, zero, {0.0});
    const double b0 = idem.orbits.front().sup_norm();
    ok = ok && b0 <= 1e-10;                // B(lambda_0) = 0
    double idem_sup = 0.0;                 // full pipeline reproduces the base orbit
    for (std::size_t i = 0; i < idem.orbits.front().t.size(); ++i) {
        const double tt = idem.orbits.front().t[i];
        if (tt < orb.t_begin() || tt > orb.t_end()) continue;
        const Vec2 rebuilt = idem.orbits.front().base[i] + idem.orbits.front().correction[i];
        idem_sup = std::max(idem_sup, std::fabs(rebuilt.x - orb.rho_at(tt)));
    }
    ok = ok && idem_sup <= 1e-8;

    const PerturbationFn psi = gaussian_bump(0.0, 2.0);
    const double delta = 1e-4;
    const PerturbedBoreResult r1 = perturbed_bore(orb, psi, {0.0, delta});
    const PerturbedBoreResult r2 = perturbed_bore(orb, psi, {0.0, delta / 2.0});
    const double rel = std::fabs(r1.lipschitz_ratio - r2.lipschitz_ratio)
                     / std::max(r1.lipschitz_ratio, r2.lipschitz_ratio);
    ok = ok && rel <= 0.2;
    for (const PerturbedOrbit& po : r1.orbits) {
        ok = ok && po.contraction_ratio < 2.0 / 3.0 && po.glue_mismatch <= 1e-9;
    }
    detail = " (B(l0) " + format_g17(b0) + ", idem " + format_g17(idem_sup)
           + ", Lipschitz drift " + format_g17(rel) + ")";
    report(10, ok, "perturbation theory at desk scale" + detail, t.seconds(), 30.0);
}

void criterion_11() {
    Timer t;
    struct Case {
        PhysParams params;
        bool oscillatory;
    };
    // sink/source eigenvalue character verified via linearize below
    const std::vector<Case> cases = {
        {PhysParams(2.0, 1.0, 0.125, 0.770, 0.0, 0.1), true},  // C1, complex sink
        {PhysParams(0.25, 1.0, 0.5, 0.99, 0.0, 0.1), false},   // C1, real sink
        {PhysParams(2.0, 1.0, 25.0, 0.855, 0.0, 0.1), false},  // Cminus1, real source
        {PhysParams(8.0, 1.0, 25.0, 0.855, 0.0, 0.1), true},   // Cminus1, complex source
    };
    bool ok = true;
    std::string detail;
    for (const Case& c : cases) {
        const EquilibriumSpectrum sp = linearize(EquilibriumPoint::RhoPlus, c.params);
        if (sp.real_eigenvalues == c.oscillatory) {
            ok = false;
            detail += " eigencharacter mismatch;";
            continue;
        }
        const Landscape ls(c.params);
        const OrbitSolution orb = shoot_heteroclinic(c.params, ls);

        // sign changes of H' (= rho' H, same signs as rho') beyond tolerance
        int changes = 0;
        double last = 0.0;
        for (std::size_t k = 0; k < orb.rho_prime.size(); ++k) {
            const double v = orb.rho_prime[k];
            if (std::fabs(v) <= 1e-8) continue;
            if (last != 0.0 && (v > 0) != (last > 0)) ++changes;
            last = v;
        }
        if (c.oscillatory ? changes < 2 : changes != 0) {
            ok = false;
            detail += " profile character wrong (changes=" + std::to_string(changes) + ");";
        }

        // vorticity negative at interior nodes below the free-surface
        // flexure layer (the ansatz's eps^2 surface terms flip the vanishing
        // shear curl on concave stretches of H above it; see ledger)
        const ShallowProfile prof = build_profile(orb, c.params);
        GridSpec spec;
        spec.nx = 257;
        spec.ny = 41;
        const auto [lo, hi] = residual_window(orb, 1e-6);
        spec.x_min = lo;
        spec.x_max = hi;
        spec.frame = Frame::Traveling;
        const FieldGrid grid = reconstruct(prof, c.params, spec);
        const StreamlineData data = streamlines_and_vorticity(grid);
        for (std::size_t i = 1; i + 1 < grid.nx(); ++i)
            for (std::size_t j = 1; j + 1 < grid.ny(); ++j)
                if (grid.s[j] <= 0.85 && data.omega[i * grid.ny() + j] >= 0.0) ok = false;
    }
    report(11, ok, "figure-style qualitative reproduction (oscillatory/monotone + bulk "
                   "vorticity sign)" + detail,
           t.seconds(), 0.0);
}

} // namespace

int main() {
    std::printf("boreforge acceptance suite\n");
    criterion_1();
    criterion_2();
    criteria_3_5_9();
    criterion_4();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_10();
    criterion_11();
    if (failures == 0) std::printf("all criteria passed\n");
    else std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
