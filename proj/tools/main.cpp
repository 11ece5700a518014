// boreforge: traveling bore-wave laboratory command line front end.
//
// Subcommands: classify, orbit, profile, fields, residual, sweep, perturb.
// Exit codes: 0 success, 2 domain errors (e.g. excluded region), 1 internal.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "boreforge/io.hpp"
#include "boreforge/svg.hpp"

namespace bf = boreforge;
namespace fs = std::filesystem;

namespace {

struct CommonOpts {
    std::optional<double> mu, a, g, A, sigma, eps;
    std::string config_path;
    std::string out_dir = ".";
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    auto opt = [&](const char* name, std::optional<double>& slot, const char* desc) {
        cmd->add_option_function<double>(
            name, [&slot](double v) { slot = v; }, desc);
    };
    opt("--mu", c.mu, "nondimensional viscosity");
    opt("--a", c.a, "nondimensional slip");
    opt("--g", c.g, "nondimensional vertical gravity");
    opt("--A", c.A, "relative flux parameter in (0,1)");
    opt("--sigma", c.sigma, "nondimensional surface tension");
    opt("--eps", c.eps, "shallowness parameter in (0,1)");
    cmd->add_option("--config", c.config_path, "JSON config file; flags win on conflict");
    cmd->add_option("--out", c.out_dir, "output directory");
}

bf::ParamsConfig resolve_config(const CommonOpts& c) {
    bf::ParamsConfig file_cfg;
    if (!c.config_path.empty()) {
        std::ifstream f(c.config_path);
        if (!f) throw std::domain_error("cannot open config " + c.config_path);
        nlohmann::json j;
        f >> j;
        file_cfg = bf::parse_params_config(j);
    }
    bf::ParamsConfig flags;
    flags.mu = c.mu;
    flags.a = c.a;
    flags.g = c.g;
    flags.A = c.A;
    flags.sigma = c.sigma;
    flags.eps = c.eps;
    return bf::merge_configs(file_cfg, flags);
}

fs::path ensure_out(const CommonOpts& c) {
    fs::path dir(c.out_dir);
    fs::create_directories(dir);
    return dir;
}

std::size_t worker_count(std::size_t jobs) {
    std::size_t n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("BOREFORGE_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap > 0) n = std::min<std::size_t>(n, static_cast<std::size_t>(cap));
    }
    return std::max<std::size_t>(1, std::min(n, jobs));
}

// dispatches [0, jobs) over the worker pool
template <class Fn>
void parallel_for(std::size_t jobs, Fn&& fn) {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const std::size_t nw = worker_count(jobs);
    for (std::size_t w = 0; w < nw; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < jobs; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) values.push_back(std::stod(tok));
    }
    return values;
}

struct OrbitBundle {
    bf::PhysParams params;
    bf::Landscape landscape;
    bf::OrbitSolution orbit;
};

OrbitBundle make_orbit(const bf::ParamsConfig& cfg) {
    const bf::PhysParams p = bf::resolve_params(cfg);
    bf::Landscape ls(p);
    if (ls.region() == bf::Region::Excluded) {
        const bf::ClassifyResult c = bf::classify(p.g, p.A);
        throw std::domain_error(
            "(g, A) lies in the excluded region; bores exist for g < "
            + bf::format_g17(c.boundaries.g_c1) + " or g > "
            + bf::format_g17(c.boundaries.g_cm1));
    }
    bf::OrbitSolution orb = bf::shoot_heteroclinic(p, ls);
    return {p, std::move(ls), std::move(orb)};
}

int run_classify(const CommonOpts& common) {
    const bf::ParamsConfig cfg = resolve_config(common);
    const double g = cfg.g.value_or(1.0);
    const double A = cfg.A.value_or(0.5);
    const bf::ClassifyResult res = bf::classify(g, A);
    switch (res.region) {
        case bf::Region::C1: std::cout << "C1 (ebbing)\n"; return 0;
        case bf::Region::Cminus1: std::cout << "Cminus1 (surging)\n"; return 0;
        default:
            std::cout << "Excluded\n";
            std::cout << "boundaries: C1 for g < " << bf::format_g17(res.boundaries.g_c1)
                      << ", Cminus1 for g > " << bf::format_g17(res.boundaries.g_cm1)
                      << "\n";
            return 2;
    }
}

int run_orbit(const CommonOpts& common) {
    const bf::ParamsConfig cfg = resolve_config(common);
    const OrbitBundle b = make_orbit(cfg);
    const fs::path dir = ensure_out(common);
    const fs::path file = dir / "orbit.csv";
    bf::write_text_file(file, bf::orbit_csv(b.orbit));
    bf::write_sidecar(file, cfg, "orbit", bf::orbit_metadata(b.orbit));
    std::cout << file.string() << "\n";
    return 0;
}

int run_profile(const CommonOpts& common) {
    const bf::ParamsConfig cfg = resolve_config(common);
    const OrbitBundle b = make_orbit(cfg);
    const bf::ShallowProfile prof = bf::build_profile(b.orbit, b.params);
    const fs::path dir = ensure_out(common);
    const fs::path file = dir / "profile.csv";
    bf::write_text_file(file, bf::profile_csv(prof));
    const bf::ProfileVerification v = bf::verify_shallow_water(prof);
    bf::write_sidecar(file, cfg, "profile",
                      {{"mass_sup", v.mass_sup},
                       {"momentum_sup", v.momentum_sup},
                       {"limit_defect", v.limit_defect}});
    std::cout << file.string() << "\n";
    return 0;
}

int run_fields(const CommonOpts& common, std::size_t nx, std::size_t ny,
               const std::string& frame, bool svg) {
    const bf::ParamsConfig cfg = resolve_config(common);
    const OrbitBundle b = make_orbit(cfg);
    const bf::ShallowProfile prof = bf::build_profile(b.orbit, b.params);
    bf::GridSpec spec;
    spec.nx = nx;
    spec.ny = ny;
    const auto [lo, hi] = bf::residual_window(b.orbit, 1e-6);
    spec.x_min = lo;
    spec.x_max = hi;
    spec.frame = frame == "traveling" ? bf::Frame::Traveling : bf::Frame::Lab;
    const bf::FieldGrid grid = bf::reconstruct(prof, b.params, spec);

    const fs::path dir = ensure_out(common);
    const fs::path file = dir / "fields.json";
    if (spec.frame == bf::Frame::Traveling) {
        const bf::StreamlineData data = bf::streamlines_and_vorticity(grid);
        bf::write_text_file(file, bf::field_json(grid, &data.omega).dump(2) + "\n");
        if (svg) {
            const fs::path pic = dir / "fields.svg";
            bf::write_text_file(pic, bf::field_svg(grid, data));
            bf::write_sidecar(pic, cfg, "fields");
        }
    } else {
        bf::write_text_file(file, bf::field_json(grid).dump(2) + "\n");
    }
    bf::write_sidecar(file, cfg, "fields",
                      {{"nx", nx}, {"ny", ny}, {"frame", frame}});
    std::cout << file.string() << "\n";
    return 0;
}

int run_residual(const CommonOpts& common, std::size_t nx, std::size_t ny) {
    const bf::ParamsConfig cfg = resolve_config(common);
    const OrbitBundle b = make_orbit(cfg);
    const bf::ShallowProfile prof = bf::build_profile(b.orbit, b.params);
    bf::GridSpec spec;
    spec.nx = nx;
    spec.ny = ny;
    const auto [lo, hi] = bf::residual_window(b.orbit, 1e-8);
    spec.x_min = lo;
    spec.x_max = hi;
    const bf::ResidualReport rep = bf::evaluate_residuals_checked(prof, b.params, spec);
    const fs::path dir = ensure_out(common);
    const fs::path file = dir / "residual.json";
    bf::write_text_file(file, bf::residual_json(rep).dump(2) + "\n");
    bf::write_sidecar(file, cfg, "residual", {{"nx", nx}, {"ny", ny}});
    std::cout << file.string() << "\n";
    return 0;
}

int run_sweep(const CommonOpts& common, const std::string& mode, std::size_t ng,
              std::size_t nA, double g_max, const std::string& eps_list) {
    const bf::ParamsConfig cfg = resolve_config(common);
    const fs::path dir = ensure_out(common);

    if (mode == "region") {
        // per-A boundaries once, then the g-grid classification is immediate
        std::vector<std::string> rows(nA);
        parallel_for(nA, [&](std::size_t ia) {
            const double A = (ia + 0.5) / static_cast<double>(nA);
            std::string chunk;
            try {
                const bf::ClassifyResult c = bf::classify(0.0, A);
                for (std::size_t ig = 0; ig < ng; ++ig) {
                    const double g = g_max * static_cast<double>(ig)
                                   / std::max<std::size_t>(1, ng - 1);
                    const char* label = "Excluded";
                    if (g < c.boundaries.g_c1) label = "C1";
                    else if (g > c.boundaries.g_cm1) label = "Cminus1";
                    chunk += bf::format_g17(g) + "," + bf::format_g17(A) + "," + label + ","
                           + bf::format_g17(c.boundaries.g_c1) + ","
                           + bf::format_g17(c.boundaries.g_cm1) + ",ok\n";
                }
            } catch (const std::exception& e) {
                chunk = "," + bf::format_g17(A) + ",,,," + std::string(e.what()) + "\n";
            }
            rows[ia] = std::move(chunk);
        });
        std::string out = "g,A,region,g_c1_boundary,g_cm1_boundary,status\n";
        for (const std::string& r : rows) out += r;
        const fs::path file = dir / "region_sweep.csv";
        bf::write_text_file(file, out);
        bf::write_sidecar(file, cfg, "sweep",
                          {{"mode", "region"}, {"ng", ng}, {"nA", nA}, {"g_max", g_max}});
        std::cout << file.string() << "\n";
        return 0;
    }

    if (mode == "eps") {
        const std::vector<double> eps_values = parse_list(eps_list);
        std::string out =
            "eps,momentum1_L2,momentum2_L2,stress1,stress2,slip,flux,fitted_order,status\n";
        try {
            const OrbitBundle b = make_orbit(cfg);
            const auto rows = bf::eps_sweep(b.orbit, b.params, eps_values);
            for (const bf::EpsSweepRow& r : rows)
                out += bf::format_g17(r.eps) + "," + bf::format_g17(r.momentum1_l2) + ","
                     + bf::format_g17(r.momentum2_l2) + "," + bf::format_g17(r.stress1) + ","
                     + bf::format_g17(r.stress2) + "," + bf::format_g17(r.slip) + ","
                     + bf::format_g17(r.flux) + "," + bf::format_g17(r.fitted_order)
                     + ",ok\n";
        } catch (const std::exception& e) {
            for (double eps : eps_values)
                out += bf::format_g17(eps) + ",,,,,,,," + std::string(e.what()) + "\n";
        }
        const fs::path file = dir / "eps_sweep.csv";
        bf::write_text_file(file, out);
        bf::write_sidecar(file, cfg, "sweep", {{"mode", "eps"}, {"eps_list", eps_list}});
        std::cout << file.string() << "\n";
        return 0;
    }

    throw std::domain_error("sweep: unknown mode \"" + mode + "\"");
}

int run_perturb(const CommonOpts& common, const std::string& spec_path,
                std::string lambda_list, double t0, double width) {
    const bf::ParamsConfig cfg = resolve_config(common);
    if (!spec_path.empty()) {
        // JSON perturbation spec; flags act as fallbacks
        std::ifstream f(spec_path);
        if (!f) throw std::domain_error("cannot open perturbation spec " + spec_path);
        nlohmann::json j;
        f >> j;
        for (auto it = j.begin(); it != j.end(); ++it) {
            const std::string& key = it.key();
            if (key != "type" && key != "lambdas" && key != "t0" && key != "w")
                throw std::domain_error("perturbation spec: unknown key \"" + key + "\"");
        }
        if (j.value("type", "gaussian") != "gaussian")
            throw std::domain_error("perturbation spec: only the gaussian family is built in");
        if (j.contains("lambdas")) {
            lambda_list.clear();
            for (double v : j.at("lambdas").get<std::vector<double>>())
                lambda_list += (lambda_list.empty() ? "" : ",") + bf::format_g17(v);
        }
        t0 = j.value("t0", t0);
        width = j.value("w", width);
    }
    const std::vector<double> lambdas = parse_list(lambda_list);
    if (lambdas.empty()) throw std::domain_error("perturb: empty lambda list");
    const OrbitBundle b = make_orbit(cfg);
    const bf::PerturbedBoreResult res =
        bf::perturbed_bore(b.orbit, bf::gaussian_bump(t0, width), lambdas);

    const fs::path dir = ensure_out(common);
    nlohmann::json summary;
    summary["lipschitz_ratio"] = res.lipschitz_ratio;
    summary["measured_K"] = res.hyperbolic.K;
    summary["measured_alpha"] = res.hyperbolic.alpha;
    nlohmann::json per_lambda = nlohmann::json::array();
    for (std::size_t k = 0; k < res.orbits.size(); ++k) {
        const bf::PerturbedOrbit& po = res.orbits[k];
        const fs::path file = dir / ("perturb_" + std::to_string(k) + ".csv");
        bf::write_text_file(file, bf::perturbed_orbit_csv(po));
        bf::write_sidecar(file, cfg, "perturb",
                          {{"lambda", po.lambda},
                           {"t0", t0},
                           {"w", width},
                           {"switch_time", po.switch_time},
                           {"glue_mismatch", po.glue_mismatch},
                           {"contraction_ratio", po.contraction_ratio}});
        per_lambda.push_back({{"lambda", po.lambda},
                              {"file", file.filename().string()},
                              {"sup_correction", po.sup_norm()},
                              {"contraction_ratio", po.contraction_ratio}});
    }
    summary["orbits"] = per_lambda;
    const fs::path file = dir / "perturb_summary.json";
    bf::write_text_file(file, summary.dump(2) + "\n");
    bf::write_sidecar(file, cfg, "perturb", {{"t0", t0}, {"w", width}});
    std::cout << file.string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"boreforge: traveling bore waves of the shallow free-boundary "
                 "Navier-Stokes system"};
    app.require_subcommand(1);

    CommonOpts common;
    std::size_t nx = 513, ny = 65;
    std::string frame = "traveling";
    bool svg = false;
    std::string mode = "region", eps_list = "0.2,0.1,0.05", lambda_list = "0,0.0001";
    std::string perturb_spec;
    std::size_t ng = 200, nA = 200;
    double g_max = 40.0, t0 = 0.0, width = 2.0;

    CLI::App* c_classify = app.add_subcommand("classify", "classify (g, A) by bore chirality");
    add_common(c_classify, common);

    CLI::App* c_orbit = app.add_subcommand("orbit", "compute the heteroclinic bore orbit");
    add_common(c_orbit, common);

    CLI::App* c_profile = app.add_subcommand("profile", "shallow-water variable bundle");
    add_common(c_profile, common);

    CLI::App* c_fields = app.add_subcommand("fields", "two-dimensional bore fields");
    add_common(c_fields, common);
    c_fields->add_option("--nx", nx, "grid nodes along x");
    c_fields->add_option("--ny", ny, "grid nodes along y");
    c_fields->add_option("--frame", frame, "lab or traveling");
    c_fields->add_flag("--svg", svg, "emit an SVG rendering");

    CLI::App* c_residual = app.add_subcommand("residual", "Navier-Stokes residual report");
    add_common(c_residual, common);
    c_residual->add_option("--nx", nx, "grid nodes along x");
    c_residual->add_option("--ny", ny, "grid nodes along y");

    CLI::App* c_sweep = app.add_subcommand("sweep", "parameter sweeps (region or eps)");
    add_common(c_sweep, common);
    c_sweep->add_option("--mode", mode, "region or eps");
    c_sweep->add_option("--ng", ng, "g-grid size for region sweeps");
    c_sweep->add_option("--nA", nA, "A-grid size for region sweeps");
    c_sweep->add_option("--g-max", g_max, "g-range upper end for region sweeps");
    c_sweep->add_option("--eps-list", eps_list, "comma-separated eps values");

    CLI::App* c_perturb = app.add_subcommand("perturb", "perturbed-orbit laboratory");
    add_common(c_perturb, common);
    c_perturb->add_option("--spec", perturb_spec, "JSON perturbation spec file");
    c_perturb->add_option("--lambdas", lambda_list, "comma-separated bump amplitudes");
    c_perturb->add_option("--t0", t0, "bump center");
    c_perturb->add_option("--w", width, "bump width");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_classify->parsed()) return run_classify(common);
        if (c_orbit->parsed()) return run_orbit(common);
        if (c_profile->parsed()) return run_profile(common);
        if (c_fields->parsed()) return run_fields(common, nx, ny, frame, svg);
        if (c_residual->parsed()) return run_residual(common, nx, ny);
        if (c_sweep->parsed()) return run_sweep(common, mode, ng, nA, g_max, eps_list);
        if (c_perturb->parsed())
            return run_perturb(common, perturb_spec, lambda_list, t0, width);
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
