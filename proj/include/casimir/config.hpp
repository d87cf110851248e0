#pragma once

#include <optional>
#include <string>
#include <utility>

#include "casimir/regimes.hpp"

namespace casimir {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { Csv, Json };

// Validated run configuration.  Angles are accepted in degrees and
// converted when the particle model is built; lengths in the document are
// nanometers.
struct RunConfig {
    // particle
    double r = 1.0;
    double volume_nm3 = 1.0;
    double theta_deg = 0.0;
    double phi_deg = 0.0;
    std::string particle_material_kind = "plasma";
    double particle_omega_p = kGoldOmegaP;
    double particle_epsilon = 1.0;

    // surface
    std::string surface_material_kind = "plasma";
    double surface_omega_p = kGoldOmegaP;
    double surface_epsilon = 1.0;

    // geometry
    double a_nm = 1.0;
    double z0_nm = 30.0;
    std::optional<double> lambda_c_over_z0;  // required by `eval`

    EvalMode mode = EvalMode::Retarded;

    double sweep_min = 1.0;
    double sweep_max = 12.0;
    std::size_t sweep_points = 50;

    std::optional<std::pair<double, double>> transition_bracket;

    QuadratureConfig quad;
    bool quad_rel_tol_set = false;  // subcommands pick their default otherwise

    std::string output_path;  // empty: stdout
    OutputFormat format = OutputFormat::Csv;

    ParticleModel particle() const;
    PermittivityModel surface() const;
    Geometry geometry(double lambda_over_z0) const;
    double z0() const { return z0_nm * 1e-9; }
    double amplitude() const { return a_nm * 1e-9; }

    // Canonical document; re-parsing it yields an equivalent config.
    std::string fingerprint() const;
};

// Parse and validate a JSON configuration document.  Unknown keys are
// rejected; every error message carries the offending key path.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

std::string mode_name(EvalMode m);
EvalMode mode_from_name(const std::string& name);

} // namespace casimir
