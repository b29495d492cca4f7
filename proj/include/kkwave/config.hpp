#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "kkwave/diagnostics.hpp"
#include "kkwave/forces.hpp"
#include "kkwave/grid.hpp"
#include "kkwave/potentials.hpp"

namespace kkwave {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fully specified run, built from the flat dotted key=value format.
struct RunConfig {
    // grid
    double x_min = -409.6;
    double x_max = 409.6;
    std::size_t n = 8192;
    // packet
    double d = 100.0;
    double w = 1.2;
    double p0 = 1.0;
    // potential
    std::string potential_kind = "none";  // none|gaussian|single_pole|poschl_teller|tabulated
    double v0 = 10.0;
    double alpha = 0.2;
    int pt_n = 1;
    std::string potential_file;
    bool envelope = false;
    double envelope_b = 60.0;
    int envelope_order = 4;
    // force
    std::string force_kind = "none";  // none|cosine|tabulated|tailored
    double f0 = 0.25;
    double period = 40.0;
    std::string force_file;
    double tailored_x_init = -60.0;
    double tailored_p_init = 9.0;
    // solver
    std::string engine = "split_step";  // split_step|momentum|kh_frame
    double dt = 0.0025;
    double t_final = 100.0;
    double strobe = 0.5;
    // diagnostics
    double probe_d = 100.0;
    double probe_v_d = -0.2;
    double window_x_w = 0.0;  // 0: derive as max(L, d/2)
    double window_t_w = 0.0;  // 0: derive as T + 10
    // output
    std::string out_dir = "out";
};

/// One "section.key = value" assignment; unknown keys raise ConfigError
/// listing every accepted key.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Parses a config file: one key=value per line, '#' comments, blank lines ok.
RunConfig parse_config_file(const std::string& path);

/// Re-parses "key=value" strings (CLI --set overrides).
void apply_overrides(RunConfig& config, const std::vector<std::string>& assignments);

/// Cross-field validation (positive sizes, known enums, required files).
void validate(const RunConfig& config);

PotentialSpec potential_from(const RunConfig& config);
ForceSpec force_from(const RunConfig& config);
SpatialGrid grid_from(const RunConfig& config);

/// Flat manifest describing the run; sufficient to re-execute it.
std::vector<std::pair<std::string, std::string>> manifest_of(const RunConfig& config);

}  // namespace kkwave
