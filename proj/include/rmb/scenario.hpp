// scenario.hpp - scenario configuration: strict sectioned key/value parsing,
// built-in figure presets, and resolution into a SolverSetup.

#pragma once

#include <string>
#include <vector>

#include "rmb/params.hpp"
#include "rmb/solver.hpp"

namespace rmb {

struct ChannelConfig {
    int offset_k = 0;      // integer multiple of dv' = lambda'/tau_max_rest
    double density = 0.0;  // channel n_t' (1/m^3)
};

struct OutputConfig {
    std::string directory = ".";
    int series_stride = 1;
    std::vector<double> snapshot_taus;  // observer-frame times (s)
    double log_floor = 1e-30;           // W/m^2, floor for log-scale plots
};

struct ScenarioConfig {
    int schema_version = 1;
    std::string name = "run";
    TransitionSpec transition;
    double length_rest = 0.0;  // L' (m)
    TimescaleSpec timescales;
    double beta = 0.0;
    int n_z = 0;
    int n_tau = 0;
    double tau_max_rest = 0.0;
    std::vector<ChannelConfig> channels;  // at least one after resolution
    PumpSpec pumps;
    double boundary_intensity = 0.0;  // observer frame (W/m^2)
    OutputConfig output;

    // Derived channel step dv' = lambda'/tau_max_rest (m/s).
    double velocity_step() const;

    // Fully validated solver inputs (theta0 = 2/sqrt(N) from the total density).
    SolverSetup solver_setup() const;
};

/// Parses a configuration document. Errors carry a machine-readable prefix:
/// "syntax error:", "unknown key:", or "constraint violation:".
ScenarioConfig parse_config(const std::string& text);

/// Emits the resolved configuration; parse_config(emit_config(c)) gives
/// identical resolved values.
std::string emit_config(const ScenarioConfig& config);

std::vector<std::string> preset_names();
bool is_preset(const std::string& name);
ScenarioConfig preset(const std::string& name);

}  // namespace rmb
