#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "boreforge/io.hpp"
#include "boreforge/ns_residual.hpp"
#include "boreforge/perturb.hpp"
#include "boreforge/svg.hpp"

namespace py = pybind11;
using namespace boreforge;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

py::array_t<double> to_array_2d(const std::vector<long double>& v, std::size_t nx,
                                std::size_t ny) {
    py::array_t<double> out({static_cast<py::ssize_t>(nx), static_cast<py::ssize_t>(ny)});
    double* ptr = out.mutable_data();
    for (std::size_t k = 0; k < v.size(); ++k) ptr[k] = static_cast<double>(v[k]);
    return out;
}

py::array_t<double> to_array_ld(const std::vector<long double>& v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    double* ptr = out.mutable_data();
    for (std::size_t k = 0; k < v.size(); ++k) ptr[k] = static_cast<double>(v[k]);
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "traveling bore waves of the shallow free-boundary Navier-Stokes system";
    m.attr("__version__") = kToolVersion;

    py::class_<PhysParams>(m, "PhysParams")
        .def(py::init<double, double, double, double, double, double>(), py::arg("mu"),
             py::arg("a"), py::arg("g"), py::arg("A"), py::arg("sigma") = 0.0,
             py::arg("eps") = 0.1)
        .def_readonly("mu", &PhysParams::mu)
        .def_readonly("a", &PhysParams::a)
        .def_readonly("g", &PhysParams::g)
        .def_readonly("A", &PhysParams::A)
        .def_readonly("sigma", &PhysParams::sigma)
        .def_readonly("eps", &PhysParams::eps);

    py::class_<Equilibria>(m, "Equilibria")
        .def_readonly("h_minus", &Equilibria::h_minus)
        .def_readonly("h_plus", &Equilibria::h_plus)
        .def_readonly("rho_minus", &Equilibria::rho_minus)
        .def_readonly("rho_plus", &Equilibria::rho_plus);
    m.def("equilibria", &equilibria, py::arg("A"));

    py::class_<TunedConstants>(m, "TunedConstants")
        .def_readonly("gamma_bar", &TunedConstants::gamma_bar)
        .def_readonly("A_bar", &TunedConstants::A_bar)
        .def_readonly("A_hat", &TunedConstants::A_hat);
    m.def("tune", &tune, py::arg("params"));
    m.def("flux_cubic", &flux_cubic, py::arg("params"), py::arg("tuned"), py::arg("h"));

    py::class_<FroudeResult>(m, "FroudeResult")
        .def_readonly("value", &FroudeResult::value)
        .def_readonly("supercritical_limit", &FroudeResult::supercritical_limit);
    m.def("froude", &froude, py::arg("params"));

    py::class_<DimensionalParams>(m, "DimensionalParams")
        .def(py::init([](double mu, double kappa, double a, double g, double sigma,
                         double gamma) {
                 return DimensionalParams{mu, kappa, a, g, sigma, gamma};
             }),
             py::arg("mu"), py::arg("kappa"), py::arg("a"), py::arg("g"), py::arg("sigma"),
             py::arg("gamma"))
        .def_readonly("mu", &DimensionalParams::mu)
        .def_readonly("kappa", &DimensionalParams::kappa)
        .def_readonly("a", &DimensionalParams::a)
        .def_readonly("g", &DimensionalParams::g)
        .def_readonly("sigma", &DimensionalParams::sigma)
        .def_readonly("gamma", &DimensionalParams::gamma_speed);

    py::class_<Dimensionalized>(m, "Dimensionalized")
        .def_readonly("params", &Dimensionalized::params)
        .def_readonly("flux", &Dimensionalized::flux)
        .def_readonly("iota", &Dimensionalized::iota)
        .def_readonly("length_scale", &Dimensionalized::length_scale)
        .def_readonly("velocity_scale", &Dimensionalized::velocity_scale);
    m.def("dimensionalize", &dimensionalize, py::arg("dimensional"), py::arg("A"),
          py::arg("eps"));

    py::enum_<Region>(m, "Region")
        .value("C1", Region::C1)
        .value("Cminus1", Region::Cminus1)
        .value("Excluded", Region::Excluded);
    py::enum_<Chirality>(m, "Chirality")
        .value("Ebbing", Chirality::Ebbing)
        .value("Surging", Chirality::Surging)
        .value("Excluded", Chirality::Excluded);

    py::class_<RegionBoundaries>(m, "RegionBoundaries")
        .def_readonly("g_c1", &RegionBoundaries::g_c1)
        .def_readonly("g_cm1", &RegionBoundaries::g_cm1);
    py::class_<ClassifyResult>(m, "ClassifyResult")
        .def_readonly("region", &ClassifyResult::region)
        .def_readonly("boundaries", &ClassifyResult::boundaries);
    m.def("classify", &classify, py::arg("g"), py::arg("A"));
    m.def("find_rho_star", &find_rho_star, py::arg("params"));
    m.def("find_rho_star_of_A", &find_rho_star_of_A, py::arg("A"));

    py::class_<BoundaryRow>(m, "BoundaryRow")
        .def_readonly("A", &BoundaryRow::A)
        .def_readonly("g_c1", &BoundaryRow::g_c1)
        .def_readonly("g_cm1", &BoundaryRow::g_cm1);
    m.def("region_boundary_curve", &region_boundary_curve, py::arg("A_samples"));

    py::class_<Landscape>(m, "Landscape")
        .def(py::init<const PhysParams&>(), py::arg("params"))
        .def("F", &Landscape::F, py::arg("x"))
        .def("G", &Landscape::G, py::arg("x"))
        .def("V", &Landscape::V, py::arg("x"))
        .def("dF", &Landscape::dF, py::arg("x"))
        .def("v_cap", &Landscape::v_cap, py::arg("x"))
        .def_property_readonly("rho_star", &Landscape::rho_star)
        .def_property_readonly("rho_zero", &Landscape::rho_zero)
        .def_property_readonly("region", &Landscape::region)
        .def_property_readonly("chirality", &Landscape::chirality)
        .def_property_readonly("eq", &Landscape::eq);

    py::enum_<EquilibriumPoint>(m, "EquilibriumPoint")
        .value("RhoMinus", EquilibriumPoint::RhoMinus)
        .value("RhoPlus", EquilibriumPoint::RhoPlus);
    py::enum_<LinearCharacter>(m, "LinearCharacter")
        .value("Hyperbolic", LinearCharacter::Hyperbolic)
        .value("Sink", LinearCharacter::Sink)
        .value("Source", LinearCharacter::Source);
    py::class_<EquilibriumSpectrum>(m, "EquilibriumSpectrum")
        .def_readonly("at", &EquilibriumSpectrum::at)
        .def_readonly("lambda_minus", &EquilibriumSpectrum::lambda_minus)
        .def_readonly("lambda_plus", &EquilibriumSpectrum::lambda_plus)
        .def_readonly("real_eigenvalues", &EquilibriumSpectrum::real_eigenvalues)
        .def_readonly("character", &EquilibriumSpectrum::character);
    m.def("linearize", &linearize, py::arg("at"), py::arg("params"));

    py::class_<ShootOpts>(m, "ShootOpts")
        .def(py::init<>())
        .def_readwrite("seed_offset", &ShootOpts::seed_offset)
        .def_readwrite("terminal_tol", &ShootOpts::terminal_tol)
        .def_readwrite("max_time", &ShootOpts::max_time)
        .def_readwrite("sample_dt", &ShootOpts::sample_dt)
        .def_readwrite("rtol", &ShootOpts::rtol)
        .def_readwrite("atol", &ShootOpts::atol);

    py::class_<OrbitSolution>(m, "OrbitSolution")
        .def_readonly("chirality", &OrbitSolution::chirality)
        .def_property_readonly("t", [](const OrbitSolution& o) { return to_array(o.t); })
        .def_property_readonly("rho", [](const OrbitSolution& o) { return to_array(o.rho); })
        .def_property_readonly("rho_prime",
                               [](const OrbitSolution& o) { return to_array(o.rho_prime); })
        .def_readonly("dt", &OrbitSolution::dt)
        .def_readonly("rho_limit_neg", &OrbitSolution::rho_limit_neg)
        .def_readonly("rho_limit_pos", &OrbitSolution::rho_limit_pos)
        .def_readonly("decay_rate", &OrbitSolution::decay_rate)
        .def_readonly("decay_r2", &OrbitSolution::decay_r2)
        .def_readonly("trap_violation", &OrbitSolution::trap_violation)
        .def_readonly("endpoint_error", &OrbitSolution::endpoint_error)
        .def("rho_at", &OrbitSolution::rho_at, py::arg("t"))
        .def("rho_prime_at", &OrbitSolution::rho_prime_at, py::arg("t"));
    m.def("shoot_heteroclinic", &shoot_heteroclinic, py::arg("params"), py::arg("landscape"),
          py::arg("opts") = ShootOpts{});

    py::class_<EnergyAuditReport>(m, "EnergyAuditReport")
        .def_readonly("relative_defect", &EnergyAuditReport::relative_defect)
        .def_readonly("e_start", &EnergyAuditReport::e_start)
        .def_readonly("e_end", &EnergyAuditReport::e_end);
    m.def("energy_audit", &energy_audit, py::arg("orbit"), py::arg("landscape"));

    py::class_<ProfileSample>(m, "ProfileSample")
        .def_readonly("H", &ProfileSample::H)
        .def_readonly("Hp", &ProfileSample::Hp)
        .def_readonly("U", &ProfileSample::U)
        .def_readonly("Up", &ProfileSample::Up)
        .def_readonly("U1", &ProfileSample::U1)
        .def_readonly("U2", &ProfileSample::U2)
        .def_readonly("P", &ProfileSample::P)
        .def_readonly("P1", &ProfileSample::P1)
        .def_readonly("P2", &ProfileSample::P2);
    py::class_<ShallowProfile>(m, "ShallowProfile")
        .def_property_readonly("x_begin", &ShallowProfile::x_begin)
        .def_property_readonly("x_end", &ShallowProfile::x_end)
        .def("at", &ShallowProfile::at, py::arg("x"))
        .def("limit", &ShallowProfile::limit, py::arg("upstream"));
    m.def("build_profile", &build_profile, py::arg("orbit"), py::arg("params"));

    py::class_<ProfileVerification>(m, "ProfileVerification")
        .def_readonly("mass_sup", &ProfileVerification::mass_sup)
        .def_readonly("momentum_sup", &ProfileVerification::momentum_sup)
        .def_readonly("limit_defect", &ProfileVerification::limit_defect);
    m.def("verify_shallow_water", &verify_shallow_water, py::arg("profile"));
    py::class_<LienardEquivalenceReport>(m, "LienardEquivalenceReport")
        .def_readonly("hform_sup", &LienardEquivalenceReport::hform_sup);
    m.def("verify_lienard_equivalence", &verify_lienard_equivalence, py::arg("profile"));

    py::enum_<Frame>(m, "Frame").value("Lab", Frame::Lab).value("Traveling", Frame::Traveling);
    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init<>())
        .def_readwrite("nx", &GridSpec::nx)
        .def_readwrite("ny", &GridSpec::ny)
        .def_readwrite("x_min", &GridSpec::x_min)
        .def_readwrite("x_max", &GridSpec::x_max)
        .def_readwrite("frame", &GridSpec::frame)
        .def_readwrite("include_correction", &GridSpec::include_correction);

    py::class_<FieldGrid>(m, "FieldGrid")
        .def_property_readonly("x", [](const FieldGrid& g) { return to_array(g.x); })
        .def_property_readonly("s", [](const FieldGrid& g) { return to_array(g.s); })
        .def_readonly("eps", &FieldGrid::eps)
        .def_readonly("gamma_bar", &FieldGrid::gamma_bar)
        .def_readonly("speed_c", &FieldGrid::speed_c)
        .def_readonly("frame", &FieldGrid::frame)
        .def_property_readonly("zeta", [](const FieldGrid& g) { return to_array_ld(g.zeta); })
        .def_property_readonly(
            "u1", [](const FieldGrid& g) { return to_array_2d(g.u1, g.nx(), g.ny()); })
        .def_property_readonly(
            "u2", [](const FieldGrid& g) { return to_array_2d(g.u2, g.nx(), g.ny()); })
        .def_property_readonly(
            "p", [](const FieldGrid& g) { return to_array_2d(g.p, g.nx(), g.ny()); });
    m.def("reconstruct", &reconstruct, py::arg("profile"), py::arg("params"), py::arg("spec"));
    m.def("reflect_x", &reflect_x, py::arg("grid"));
    m.def(
        "divergence_check",
        [](const FieldGrid& g) { return divergence_check(g, geometry_ops(g)); },
        py::arg("grid"));
    m.def("residual_window", &residual_window, py::arg("orbit"), py::arg("tail_cut") = 1e-8);

    py::class_<StreamlineOpts>(m, "StreamlineOpts")
        .def(py::init<>())
        .def_readwrite("seed_count", &StreamlineOpts::seed_count)
        .def_readwrite("step", &StreamlineOpts::step);
    py::class_<StreamlineData>(m, "StreamlineData")
        .def_readonly("streamlines", &StreamlineData::streamlines)
        .def_readonly("warnings", &StreamlineData::warnings)
        .def_property_readonly("omega",
                               [](const StreamlineData& d) { return to_array(d.omega); });
    m.def("streamlines_and_vorticity", &streamlines_and_vorticity, py::arg("grid"),
          py::arg("opts") = StreamlineOpts{});

    py::class_<Norms>(m, "Norms")
        .def_readonly("l2", &Norms::l2)
        .def_readonly("sup", &Norms::sup)
        .def_readonly("scale", &Norms::scale)
        .def_readonly("l2_normalized", &Norms::l2_normalized)
        .def_readonly("sup_normalized", &Norms::sup_normalized);
    py::class_<ResidualReport>(m, "ResidualReport")
        .def_readonly("momentum1", &ResidualReport::momentum1)
        .def_readonly("momentum2", &ResidualReport::momentum2)
        .def_readonly("divergence_sup", &ResidualReport::divergence_sup)
        .def_readonly("stress_bc1", &ResidualReport::stress_bc1)
        .def_readonly("stress_bc2", &ResidualReport::stress_bc2)
        .def_readonly("slip_bc", &ResidualReport::slip_bc)
        .def_readonly("flux_eq", &ResidualReport::flux_eq)
        .def_readonly("eps", &ResidualReport::eps)
        .def_readonly("grid_converged", &ResidualReport::grid_converged)
        .def_readonly("note", &ResidualReport::note);
    m.def(
        "evaluate_residuals",
        [](const FieldGrid& g, const PhysParams& p) {
            return evaluate_residuals(g, geometry_ops(g), p);
        },
        py::arg("grid"), py::arg("params"));
    m.def("evaluate_residuals_checked", &evaluate_residuals_checked, py::arg("profile"),
          py::arg("params"), py::arg("spec"));
    m.def("shear_flow_exact", &shear_flow_exact, py::arg("params"), py::arg("H"),
          py::arg("nx") = 257, py::arg("ny") = 257, py::arg("x_half_span") = 10.0);

    py::class_<EpsSweepRow>(m, "EpsSweepRow")
        .def_readonly("eps", &EpsSweepRow::eps)
        .def_readonly("momentum1_l2", &EpsSweepRow::momentum1_l2)
        .def_readonly("momentum2_l2", &EpsSweepRow::momentum2_l2)
        .def_readonly("stress1", &EpsSweepRow::stress1)
        .def_readonly("stress2", &EpsSweepRow::stress2)
        .def_readonly("slip", &EpsSweepRow::slip)
        .def_readonly("flux", &EpsSweepRow::flux)
        .def_readonly("fitted_order", &EpsSweepRow::fitted_order);
    m.def("eps_sweep", &eps_sweep, py::arg("orbit"), py::arg("base_params"),
          py::arg("eps_values"), py::arg("nx") = 2049, py::arg("ny") = 129);

    py::class_<FixedPointOpts>(m, "FixedPointOpts")
        .def(py::init<>())
        .def_readwrite("nodes", &FixedPointOpts::nodes)
        .def_readwrite("tol", &FixedPointOpts::tol)
        .def_readwrite("switch_distance", &FixedPointOpts::switch_distance);
    py::class_<PerturbedOrbit>(m, "PerturbedOrbit")
        .def_readonly("lambda_", &PerturbedOrbit::lambda)
        .def_readonly("switch_time", &PerturbedOrbit::switch_time)
        .def_readonly("glue_mismatch", &PerturbedOrbit::glue_mismatch)
        .def_readonly("contraction_ratio", &PerturbedOrbit::contraction_ratio)
        .def_property_readonly("t", [](const PerturbedOrbit& o) { return to_array(o.t); })
        .def_property_readonly(
            "correction",
            [](const PerturbedOrbit& o) {
                py::array_t<double> out({static_cast<py::ssize_t>(o.correction.size()),
                                         static_cast<py::ssize_t>(2)});
                double* ptr = out.mutable_data();
                for (const Vec2& v : o.correction) {
                    *ptr++ = v.x;
                    *ptr++ = v.y;
                }
                return out;
            })
        .def("sup_norm", &PerturbedOrbit::sup_norm);
    py::class_<HyperbolicData>(m, "HyperbolicData")
        .def_readonly("lambda_s", &HyperbolicData::lambda_s)
        .def_readonly("lambda_u", &HyperbolicData::lambda_u)
        .def_readonly("K", &HyperbolicData::K)
        .def_readonly("alpha", &HyperbolicData::alpha);
    py::class_<PerturbedBoreResult>(m, "PerturbedBoreResult")
        .def_readonly("orbits", &PerturbedBoreResult::orbits)
        .def_readonly("lipschitz_ratio", &PerturbedBoreResult::lipschitz_ratio)
        .def_readonly("hyperbolic", &PerturbedBoreResult::hyperbolic);
    m.def(
        "perturbed_bore",
        [](const OrbitSolution& orbit,
           const std::function<std::pair<double, double>(double, double,
                                                         std::pair<double, double>)>& psi1,
           const std::vector<double>& lambdas, const FixedPointOpts& opts) {
            PerturbationFn fn = [psi1](double lam, double t, const Vec2& x) -> Vec2 {
                const auto [vx, vy] = psi1(lam, t, {x.x, x.y});
                return {vx, vy};
            };
            return perturbed_bore(orbit, fn, lambdas, opts);
        },
        py::arg("orbit"), py::arg("psi1"), py::arg("lambdas"),
        py::arg("opts") = FixedPointOpts{});
    m.def(
        "perturbed_bore_gaussian",
        [](const OrbitSolution& orbit, double t0, double width,
           const std::vector<double>& lambdas, const FixedPointOpts& opts) {
            return perturbed_bore(orbit, gaussian_bump(t0, width), lambdas, opts);
        },
        py::arg("orbit"), py::arg("t0"), py::arg("width"), py::arg("lambdas"),
        py::arg("opts") = FixedPointOpts{});

    m.def(
        "field_svg",
        [](const FieldGrid& grid, const StreamlineData& data) { return field_svg(grid, data); },
        py::arg("grid"), py::arg("data"));
}
