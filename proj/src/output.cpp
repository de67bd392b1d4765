#include "rmb/output.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rmb/errors.hpp"
#include "rmb/plot.hpp"

namespace rmb {

namespace {

std::string sci(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", x);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw RunError("io: cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw RunError("io: write failed for '" + path + "'");
}

}  // namespace

std::string results_csv(const SimulationResult& result) {
    std::ostringstream out;
    out << "tau_s,intensity_W_m2,E_re_V_m,E_im_V_m,intensity_norm\n";
    double peak = 0.0;
    for (double i : result.intensity) peak = std::max(peak, i);
    const double inv_peak = peak > 0.0 ? 1.0 / peak : 0.0;
    for (std::size_t i = 0; i < result.tau.size(); ++i) {
        out << sci(result.tau[i]) << ',' << sci(result.intensity[i]) << ','
            << sci(result.endfire_field[i].real()) << ','
            << sci(result.endfire_field[i].imag()) << ','
            << sci(result.intensity[i] * inv_peak) << '\n';
    }
    return out.str();
}

std::vector<SeriesRow> parse_results_csv(const std::string& text) {
    std::vector<SeriesRow> rows;
    std::stringstream ss(text);
    std::string line;
    if (!std::getline(ss, line) || line.rfind("tau_s,", 0) != 0)
        throw RunError("io: series CSV missing header row");
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        SeriesRow row;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &row.tau,
                        &row.intensity, &row.field_re, &row.field_im,
                        &row.intensity_norm) != 5)
            throw RunError("io: malformed series CSV row: " + line);
        rows.push_back(row);
    }
    return rows;
}

std::string channels_csv(const SimulationResult& result) {
    std::ostringstream out;
    out << "tau_s";
    for (std::size_t v = 0; v < result.channels.size(); ++v)
        out << ",ch" << v << "_mean_n_m3,ch" << v << "_max_P_C_m2";
    out << '\n';
    for (std::size_t i = 0; i < result.tau.size(); ++i) {
        out << sci(result.tau[i]);
        for (const auto& ch : result.channels)
            out << ',' << sci(ch.mean_inversion[i]) << ','
                << sci(ch.max_abs_polarization[i]);
        out << '\n';
    }
    return out.str();
}

std::string snapshot_csv(const Snapshot& snapshot, const GridSpec& grid) {
    std::ostringstream out;
    out << "z_m,E_re_V_m,E_im_V_m";
    for (std::size_t v = 0; v < snapshot.inversion.size(); ++v)
        out << ",ch" << v << "_n_m3,ch" << v << "_abs_P_C_m2";
    out << '\n';
    for (int j = 0; j < grid.n_z; ++j) {
        out << sci(j * grid.dz()) << ',' << sci(snapshot.field[j].real()) << ','
            << sci(snapshot.field[j].imag());
        for (std::size_t v = 0; v < snapshot.inversion.size(); ++v)
            out << ',' << sci(snapshot.inversion[v][j]) << ','
                << sci(std::abs(snapshot.polarization[v][j]));
        out << '\n';
    }
    return out.str();
}

std::string metadata_json(const SimulationResult& result,
                          const ScenarioConfig& config) {
    nlohmann::json meta;
    meta["schema_version"] = 1;
    meta["name"] = config.name;

    nlohmann::json cfg;
    cfg["transition"] = {{"lambda_rest_m", config.transition.lambda_rest},
                         {"gamma_sp_rest_per_s", config.transition.gamma_sp_rest},
                         {"omega0_rest_rad_s", config.transition.omega0_rest},
                         {"dipole_rest_C_m", config.transition.dipole_rest}};
    cfg["sample"] = {{"length_rest_m", config.length_rest}};
    cfg["timescales"] = {{"t1_rest_s", config.timescales.t1_rest},
                         {"t2_rest_s", config.timescales.t2_rest}};
    cfg["frame"] = {{"beta", config.beta}};
    cfg["grid"] = {{"n_z", config.n_z},
                   {"n_tau", config.n_tau},
                   {"tau_max_rest_s", config.tau_max_rest}};
    nlohmann::json channels = nlohmann::json::array();
    for (const auto& ch : config.channels)
        channels.push_back({{"offset_k", ch.offset_k},
                            {"density_rest_m3", ch.density}});
    cfg["channels"] = channels;
    cfg["pumps"] = {{"enabled", config.pumps.enabled}};
    if (config.pumps.lambda_n) cfg["pumps"]["lambda_n"] = *config.pumps.lambda_n;
    if (config.pumps.lambda_p) cfg["pumps"]["lambda_p"] = *config.pumps.lambda_p;
    cfg["field"] = {{"boundary_intensity_W_m2", config.boundary_intensity}};
    meta["config"] = cfg;

    const DerivedParams& d = result.derived;
    meta["derived"] = {
        {"gamma", d.gamma},
        {"omega_obs_rad_s", d.omega_obs},
        {"wavenumber_obs_per_m", d.wavenumber_obs},
        {"tr_rest_s", d.tr_rest},
        {"tr_obs_s", d.tr_obs},
        {"t1_obs_s", d.t1_obs},
        {"t2_obs_s", d.t2_obs},
        {"tau_max_obs_s", d.tau_max_obs},
        {"length_obs_m", d.length_obs},
        {"n_total_rest_m3", d.n_total_rest},
        {"particle_count", d.particle_count},
        {"tipping_angle_rad", d.theta0},
        {"alpha_rest_per_m", d.alpha_rest},
        {"alpha_obs_per_m", d.alpha_obs},
        {"isat_rest_W_m2", d.isat_rest},
        {"isat_obs_W_m2", d.isat_obs},
        {"kappa", d.kappa},
        {"velocity_step_rest_m_s", config.velocity_step()},
        {"detuning_per_tr", d.detuning},
        {"dv_obs_m_s", d.dv_obs},
        {"superradiant", d.superradiant},
    };
    meta["diagnostics"] = {{"svea_ratio_max", result.svea_ratio_max},
                           {"bloch_drift_max", result.bloch_drift_max}};
    // The relativistic beaming correction (an extra (1+beta)/(1-beta)) is not
    // part of the field equations and is not applied to any output.
    meta["notes"] = {
        {"beaming_correction_applied", false},
        {"intensity_units", "W/m^2, observer frame, beaming not included"}};
    return meta.dump(2) + "\n";
}

WrittenFiles write_results(const SimulationResult& result,
                           const ScenarioConfig& config) {
    namespace fs = std::filesystem;
    const fs::path dir(config.output.directory);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec && !fs::exists(dir))
        throw RunError("io: cannot create directory '" + dir.string() + "'");

    WrittenFiles files;
    const std::string stem = (dir / config.name).string();

    files.series_csv = stem + "_series.csv";
    write_file(files.series_csv, results_csv(result));

    files.channels_csv = stem + "_channels.csv";
    write_file(files.channels_csv, channels_csv(result));

    files.metadata_json = stem + "_meta.json";
    write_file(files.metadata_json, metadata_json(result, config));

    PlotTrace trace;
    trace.label = "beta = " + std::to_string(config.beta);
    trace.tau = result.tau;
    trace.intensity = result.intensity;
    const PlotStyle style =
        result.derived.superradiant ? PlotStyle::linear : PlotStyle::log_intensity;
    files.plot_svg = stem + "_plot.svg";
    write_file(files.plot_svg,
               render_plot({trace}, style, config.name, config.output.log_floor));

    for (std::size_t i = 0; i < result.snapshots.size(); ++i) {
        std::string path = stem + "_snapshot_" + std::to_string(i) + ".csv";
        write_file(path, snapshot_csv(result.snapshots[i], result.grid));
        files.snapshot_csvs.push_back(path);
    }
    return files;
}

}  // namespace rmb
