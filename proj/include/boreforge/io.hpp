#pragma once

// Configuration ingestion and file emission. Data files are the contract:
// numbers carry 17 significant digits, no timestamps, fixed ordering, and
// every emitted file gets a JSON sidecar with the resolved parameter set.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "boreforge/field.hpp"
#include "boreforge/landscape.hpp"
#include "boreforge/ns_residual.hpp"
#include "boreforge/orbit.hpp"
#include "boreforge/params.hpp"
#include "boreforge/perturb.hpp"
#include "boreforge/shallow_profile.hpp"

namespace boreforge {

inline constexpr const char* kToolName = "boreforge";
inline constexpr const char* kToolVersion = "0.1.0";

std::string format_g17(double v);

struct ParamsConfig {
    std::optional<double> mu, a, g, A, sigma, eps;
    std::optional<DimensionalParams> dimensional;

    nlohmann::json to_json() const;
};

// Parses {"mu","a","g","A","sigma","eps"} plus optional {"dimensional":
// {"mu","kappa","a","g","sigma","gamma"}}; unknown keys rejected.
ParamsConfig parse_params_config(const nlohmann::json& j);

// Resolves to a validated bundle. When a dimensional block is present it
// wins and the nondimensional values are derived from it (A and eps must
// then be given as plain keys).
PhysParams resolve_params(const ParamsConfig& cfg);

// merge: flag overrides win over file values
ParamsConfig merge_configs(const ParamsConfig& file, const ParamsConfig& flags);

// defaults materialized, so sidecars carry the full resolved parameter set
ParamsConfig with_defaults(const ParamsConfig& cfg);

void write_text_file(const std::filesystem::path& path, const std::string& content);

// <data-file>.meta.json with tool version + resolved config + extras.
void write_sidecar(const std::filesystem::path& data_path, const ParamsConfig& cfg,
                   const std::string& command, const nlohmann::json& extra = {});

nlohmann::json read_sidecar(const std::filesystem::path& data_path);

std::string boundary_curve_csv(const std::vector<BoundaryRow>& rows);
std::string landscape_samples_csv(const Landscape& ls, const std::vector<double>& xs);
std::string orbit_csv(const OrbitSolution& orbit);
nlohmann::json orbit_metadata(const OrbitSolution& orbit);
std::string profile_csv(const ShallowProfile& profile);
nlohmann::json field_json(const FieldGrid& grid, const std::vector<double>* omega = nullptr);
nlohmann::json residual_json(const ResidualReport& report);
std::string eps_sweep_csv(const std::vector<EpsSweepRow>& rows);
std::string perturbed_orbit_csv(const PerturbedOrbit& orbit);

} // namespace boreforge
