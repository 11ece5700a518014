#include "boreforge/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace boreforge {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void reject_unknown_keys(const nlohmann::json& j, const std::vector<std::string>& allowed,
                         const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            throw std::domain_error("config: unknown key \"" + it.key() + "\" in " + where);
    }
}

std::optional<double> opt_number(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) return std::nullopt;
    if (!j.at(key).is_number())
        throw std::domain_error(std::string("config: key \"") + key + "\" must be a number");
    return j.at(key).get<double>();
}

} // namespace

ParamsConfig parse_params_config(const nlohmann::json& j) {
    if (!j.is_object()) throw std::domain_error("config: expected a JSON object");
    reject_unknown_keys(j, {"mu", "a", "g", "A", "sigma", "eps", "dimensional"}, "config");
    ParamsConfig cfg;
    cfg.mu = opt_number(j, "mu");
    cfg.a = opt_number(j, "a");
    cfg.g = opt_number(j, "g");
    cfg.A = opt_number(j, "A");
    cfg.sigma = opt_number(j, "sigma");
    cfg.eps = opt_number(j, "eps");
    if (j.contains("dimensional")) {
        const nlohmann::json& d = j.at("dimensional");
        reject_unknown_keys(d, {"mu", "kappa", "a", "g", "sigma", "gamma"}, "dimensional");
        DimensionalParams dp{};
        auto need = [&](const char* key) {
            const auto v = opt_number(d, key);
            if (!v)
                throw std::domain_error(std::string("config: dimensional block requires \"")
                                        + key + "\"");
            return *v;
        };
        dp.mu = need("mu");
        dp.kappa = need("kappa");
        dp.a = need("a");
        dp.g = need("g");
        dp.sigma = need("sigma");
        dp.gamma_speed = need("gamma");
        cfg.dimensional = dp;
    }
    return cfg;
}

nlohmann::json ParamsConfig::to_json() const {
    nlohmann::json j = nlohmann::json::object();
    if (mu) j["mu"] = *mu;
    if (a) j["a"] = *a;
    if (g) j["g"] = *g;
    if (A) j["A"] = *A;
    if (sigma) j["sigma"] = *sigma;
    if (eps) j["eps"] = *eps;
    if (dimensional) {
        j["dimensional"] = {{"mu", dimensional->mu},       {"kappa", dimensional->kappa},
                            {"a", dimensional->a},         {"g", dimensional->g},
                            {"sigma", dimensional->sigma}, {"gamma", dimensional->gamma_speed}};
    }
    return j;
}

PhysParams resolve_params(const ParamsConfig& cfg) {
    const double A = cfg.A.value_or(0.5);
    const double eps = cfg.eps.value_or(0.1);
    if (cfg.dimensional) {
        const Dimensionalized d = dimensionalize(*cfg.dimensional, A, eps);
        return d.params;
    }
    return PhysParams(cfg.mu.value_or(1.0), cfg.a.value_or(1.0), cfg.g.value_or(1.0), A,
                      cfg.sigma.value_or(0.0), eps);
}

ParamsConfig with_defaults(const ParamsConfig& cfg) {
    ParamsConfig out = cfg;
    if (!out.mu) out.mu = 1.0;
    if (!out.a) out.a = 1.0;
    if (!out.g) out.g = 1.0;
    if (!out.A) out.A = 0.5;
    if (!out.sigma) out.sigma = 0.0;
    if (!out.eps) out.eps = 0.1;
    return out;
}

ParamsConfig merge_configs(const ParamsConfig& file, const ParamsConfig& flags) {
    ParamsConfig out = file;
    if (flags.mu) out.mu = flags.mu;
    if (flags.a) out.a = flags.a;
    if (flags.g) out.g = flags.g;
    if (flags.A) out.A = flags.A;
    if (flags.sigma) out.sigma = flags.sigma;
    if (flags.eps) out.eps = flags.eps;
    if (flags.dimensional) out.dimensional = flags.dimensional;
    return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << content;
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

void write_sidecar(const std::filesystem::path& data_path, const ParamsConfig& cfg,
                   const std::string& command, const nlohmann::json& extra) {
    nlohmann::json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["command"] = command;
    j["params"] = with_defaults(cfg).to_json();
    if (!extra.is_null() && !extra.empty()) j["meta"] = extra;
    std::filesystem::path side = data_path;
    side += ".meta.json";
    write_text_file(side, j.dump(2) + "\n");
}

nlohmann::json read_sidecar(const std::filesystem::path& data_path) {
    std::filesystem::path side = data_path;
    side += ".meta.json";
    std::ifstream f(side);
    if (!f) throw std::runtime_error("missing sidecar " + side.string());
    nlohmann::json j;
    f >> j;
    return j;
}

std::string boundary_curve_csv(const std::vector<BoundaryRow>& rows) {
    std::string out = "A,g_lower,g_upper\n";
    for (const BoundaryRow& r : rows)
        out += format_g17(r.A) + "," + format_g17(r.g_c1) + "," + format_g17(r.g_cm1) + "\n";
    return out;
}

std::string landscape_samples_csv(const Landscape& ls, const std::vector<double>& xs) {
    std::string out = "x,F,G,V\n";
    for (double x : xs)
        out += format_g17(x) + "," + format_g17(ls.F(x)) + "," + format_g17(ls.G(x)) + ","
             + format_g17(ls.V(x)) + "\n";
    return out;
}

std::string orbit_csv(const OrbitSolution& orbit) {
    std::string out = "t,rho,rho_prime,H,U\n";
    const double A = orbit.params.A;
    for (std::size_t k = 0; k < orbit.t.size(); ++k) {
        const double H = std::exp(orbit.rho[k]);
        out += format_g17(orbit.t[k]) + "," + format_g17(orbit.rho[k]) + ","
             + format_g17(orbit.rho_prime[k]) + "," + format_g17(H) + ","
             + format_g17(4.0 - A / H) + "\n";
    }
    return out;
}

nlohmann::json orbit_metadata(const OrbitSolution& orbit) {
    return {{"chirality", orbit.chirality},
            {"rho_limits", {orbit.rho_limit_neg, orbit.rho_limit_pos}},
            {"decay_rate", orbit.decay_rate},
            {"trap_violation", orbit.trap_violation}};
}

std::string profile_csv(const ShallowProfile& profile) {
    std::string out = "x,H,U,U1,U2,P,P1,P2\n";
    const OrbitSolution& orb = profile.orbit();
    for (std::size_t k = 0; k < orb.t.size(); ++k) {
        const ProfileSample s = profile.from_state(orb.rho[k], orb.rho_prime[k]);
        out += format_g17(orb.t[k]) + "," + format_g17(s.H) + "," + format_g17(s.U) + ","
             + format_g17(s.U1) + "," + format_g17(s.U2) + "," + format_g17(s.P) + ","
             + format_g17(s.P1) + "," + format_g17(s.P2) + "\n";
    }
    return out;
}

nlohmann::json field_json(const FieldGrid& grid, const std::vector<double>* omega) {
    nlohmann::json j;
    j["x_nodes"] = grid.x;
    nlohmann::json y = nlohmann::json::array();
    for (double s : grid.s) y.push_back(s * grid.eps);
    j["y_nodes"] = y;
    auto pack1 = [](const std::vector<long double>& v) {
        nlohmann::json a = nlohmann::json::array();
        for (long double q : v) a.push_back(static_cast<double>(q));
        return a;
    };
    j["zeta"] = pack1(grid.zeta);
    j["u1"] = pack1(grid.u1);
    j["u2"] = pack1(grid.u2);
    j["p"] = pack1(grid.p);
    if (omega) j["omega"] = *omega;
    j["eps"] = grid.eps;
    j["frame"] = grid.frame == Frame::Traveling ? "traveling" : "lab";
    return j;
}

nlohmann::json residual_json(const ResidualReport& report) {
    auto norms = [](const Norms& n) {
        return nlohmann::json{{"l2", n.l2},
                              {"sup", n.sup},
                              {"scale", n.scale},
                              {"l2_normalized", n.l2_normalized},
                              {"sup_normalized", n.sup_normalized}};
    };
    nlohmann::json j;
    j["momentum1"] = norms(report.momentum1);
    j["momentum2"] = norms(report.momentum2);
    j["divergence_sup"] = report.divergence_sup;
    j["stress_bc1"] = norms(report.stress_bc1);
    j["stress_bc2"] = norms(report.stress_bc2);
    j["slip_bc"] = norms(report.slip_bc);
    j["flux_eq"] = norms(report.flux_eq);
    j["eps"] = report.eps;
    j["grid_converged"] = report.grid_converged;
    if (!report.note.empty()) j["note"] = report.note;
    return j;
}

std::string eps_sweep_csv(const std::vector<EpsSweepRow>& rows) {
    std::string out = "eps,momentum1_L2,momentum2_L2,stress1,stress2,slip,flux,fitted_order\n";
    for (const EpsSweepRow& r : rows)
        out += format_g17(r.eps) + "," + format_g17(r.momentum1_l2) + ","
             + format_g17(r.momentum2_l2) + "," + format_g17(r.stress1) + ","
             + format_g17(r.stress2) + "," + format_g17(r.slip) + "," + format_g17(r.flux)
             + "," + format_g17(r.fitted_order) + "\n";
    return out;
}

std::string perturbed_orbit_csv(const PerturbedOrbit& orbit) {
    std::string out = "t,base_rho,base_rho_prime,corr_rho,corr_rho_prime\n";
    for (std::size_t k = 0; k < orbit.t.size(); ++k)
        out += format_g17(orbit.t[k]) + "," + format_g17(orbit.base[k].x) + ","
             + format_g17(orbit.base[k].y) + "," + format_g17(orbit.correction[k].x) + ","
             + format_g17(orbit.correction[k].y) + "\n";
    return out;
}

} // namespace boreforge
