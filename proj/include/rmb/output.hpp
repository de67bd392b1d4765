// output.hpp - result serialization: CSV series/snapshots, JSON metadata
// sidecar, and file emission for a completed run.

#pragma once

#include <string>
#include <vector>

#include "rmb/scenario.hpp"
#include "rmb/solver.hpp"

namespace rmb {

// Series CSV. Fixed leading columns (tau_s, intensity_W_m2, E_re_V_m,
// E_im_V_m), then intensity_norm (I / I_peak) for shape comparison. Numbers
// in scientific notation with 17 significant digits.
std::string results_csv(const SimulationResult& result);

// Parsed back form of results_csv, for round-trip checks and plotting tools.
struct SeriesRow {
    double tau = 0.0;
    double intensity = 0.0;
    double field_re = 0.0;
    double field_im = 0.0;
    double intensity_norm = 0.0;
};
std::vector<SeriesRow> parse_results_csv(const std::string& text);

// Per-channel summary CSV: tau_s then mean_n and max_P columns per channel.
std::string channels_csv(const SimulationResult& result);

// Full-grid snapshot CSV: z_m, E_re, E_im, then per-channel n and |P|.
std::string snapshot_csv(const Snapshot& snapshot, const GridSpec& grid);

// JSON metadata sidecar: schema_version, resolved config, every derived
// parameter with units, and run diagnostics.
std::string metadata_json(const SimulationResult& result,
                          const ScenarioConfig& config);

struct WrittenFiles {
    std::string series_csv;
    std::string channels_csv;
    std::string metadata_json;
    std::string plot_svg;
    std::vector<std::string> snapshot_csvs;
};

// Writes series CSV, channel CSV, metadata JSON, SVG plot, and one CSV per
// snapshot into config.output.directory, named after config.name.
WrittenFiles write_results(const SimulationResult& result,
                           const ScenarioConfig& config);

}  // namespace rmb
