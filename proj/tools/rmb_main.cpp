// rmb - command-line front end: run scenarios, emit presets, evaluate the
// closed-form calculators, and run a reduced-scale self-check.
//
// Exit codes: 0 success, 64 usage, 65 config, 70 runtime, 74 io.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rmb/constants.hpp"
#include "rmb/errors.hpp"
#include "rmb/output.hpp"
#include "rmb/params.hpp"
#include "rmb/relativity.hpp"
#include "rmb/scenario.hpp"
#include "rmb/solver.hpp"
#include "rmb/steady_state.hpp"

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitConfig = 65;
constexpr int kExitRuntime = 70;
constexpr int kExitIo = 74;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw rmb::RunError("io: cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Shared transition/sample flags for the analytic subcommands.
struct AnalyticInputs {
    std::string preset;  // transition preset ("oh1612") or empty
    double lambda = 0.0;
    double gamma_sp = 0.0;
    double ntot = 0.0;
    double length = 0.0;
    double t1 = 0.0;
    double t2 = 0.0;
    double beta = 0.0;
    double z = 0.0;
    double i0 = 0.0;

    rmb::TransitionSpec transition() const {
        if (!preset.empty()) {
            if (preset != "oh1612")
                throw rmb::ConfigError("constraint violation: unknown transition preset '" +
                                       preset + "'");
            return rmb::oh1612();
        }
        if (lambda <= 0.0 || gamma_sp <= 0.0)
            throw rmb::ConfigError(
                "constraint violation: provide --preset oh1612 or both --lambda and --gammasp");
        return rmb::TransitionSpec::from_line(lambda, gamma_sp);
    }
    rmb::SampleSpec sample() const {
        return rmb::SampleSpec::fresnel_one(transition(), length, ntot);
    }
    double tr_rest() const {
        return rmb::superradiance_time_rest(transition().lambda_rest, ntot, length,
                                            transition().gamma_sp_rest);
    }
};

void add_analytic_flags(CLI::App* cmd, AnalyticInputs& in, bool needs_sample,
                        bool needs_timescales) {
    cmd->add_option("--preset", in.preset, "transition preset (oh1612)");
    cmd->add_option("--lambda", in.lambda, "rest wavelength lambda' (m)");
    cmd->add_option("--gammasp", in.gamma_sp, "spontaneous rate Gamma' (1/s)");
    if (needs_sample) {
        cmd->add_option("--ntot", in.ntot, "inversion density n_t' (1/m^3)")
            ->required();
        cmd->add_option("--length", in.length, "sample length L' (m)")->required();
    }
    if (needs_timescales) {
        cmd->add_option("--t1", in.t1, "relaxation T1' (s)")->required();
        cmd->add_option("--t2", in.t2, "dephasing T2' (s)")->required();
    }
    cmd->add_option("--beta", in.beta, "frame velocity beta (default 0)");
}

void print_value(const char* label, double value, const char* unit) {
    std::printf("%s = %.6e %s\n", label, value, unit);
}

int do_run(const std::string& config_path, const std::string& preset_name,
           const std::string& output_dir, const std::string& kernel_name) {
    rmb::ScenarioConfig config;
    if (!preset_name.empty())
        config = rmb::preset(preset_name);
    else
        config = rmb::parse_config(read_file(config_path));

    if (!output_dir.empty())
        config.output.directory = output_dir;
    else if (const char* env = std::getenv("RMB_OUTPUT_DIR");
             env && *env && config.output.directory == ".")
        config.output.directory = env;

    rmb::RunOptions options;
    options.kernel =
        kernel_name == "serial" ? rmb::Kernel::serial : rmb::Kernel::openmp;
    options.series_stride = config.output.series_stride;
    options.snapshot_taus = config.output.snapshot_taus;

    rmb::Solver solver(config.solver_setup(), options);
    const rmb::SimulationResult result = solver.run();
    const rmb::WrittenFiles files = rmb::write_results(result, config);

    std::cout << files.series_csv << '\n'
              << files.channels_csv << '\n'
              << files.metadata_json << '\n'
              << files.plot_svg << '\n';
    for (const auto& path : files.snapshot_csvs) std::cout << path << '\n';
    return 0;
}

// ---- reduced-scale self-check -------------------------------------------

bool check_bessel() {
    // Linear regime: no relaxation, no pump, tiny tipping angle; the
    // polarization envelope must follow P0 I0(2 sqrt(tau z / (L T_R))).
    rmb::SolverSetup setup;
    setup.transition = rmb::oh1612();
    setup.timescales = rmb::TimescaleSpec::validated(1e9, 1e9);
    setup.beta = 0.0;
    setup.length_rest = 4.2e13;
    setup.channels = {{0.0, 2e4}};
    setup.tipping_angle = 1e-9;
    setup.boundary_intensity = 0.0;
    setup.pumps.enabled = false;
    const double tr =
        rmb::superradiance_time_rest(setup.transition.lambda_rest, 2e4,
                                     setup.length_rest, setup.transition.gamma_sp_rest);
    setup.tau_max_rest = 25.0 * tr;  // Bessel argument up to 10 at z = L
    setup.n_z = 100;
    setup.n_tau = 1251;

    rmb::Solver solver(setup);
    const auto result = solver.run();
    const double p0 = result.derived.pol_scale * std::sin(setup.tipping_angle);
    double worst = 0.0;
    for (std::size_t i = 0; i < result.tau.size(); ++i) {
        const double oracle = p0 * rmb::steady_state::bessel_i0(
                                       2.0 * std::sqrt(result.tau[i] / tr));
        const double got = result.channels[0].max_abs_polarization[i];
        worst = std::max(worst, std::abs(got - oracle) / oracle);
    }
    std::printf("check bessel-oracle: max rel err %.3e (limit 2e-2) -> %s\n",
                worst, worst < 2e-2 ? "pass" : "FAIL");
    return worst < 2e-2;
}

bool check_channel_merge() {
    rmb::SolverSetup base;
    base.transition = rmb::oh1612();
    base.timescales = rmb::TimescaleSpec::validated(0.1, 1.2e-3);
    base.beta = 0.0;
    base.length_rest = 4.2e13;
    base.tipping_angle = rmb::tipping_angle(
        rmb::particle_number(1.2e4, base.transition.lambda_rest, base.length_rest));
    base.boundary_intensity = 0.0;
    base.tau_max_rest = 1e-3;
    base.n_z = 60;
    base.n_tau = 1501;

    rmb::SolverSetup merged = base;
    merged.channels = {{0.0, 1.2e4}};
    rmb::SolverSetup split = base;
    split.channels = {{0.0, 6e3}, {0.0, 6e3}};

    const auto a = rmb::Solver(merged).run();
    const auto b = rmb::Solver(split).run();
    double peak = 0.0, worst = 0.0;
    for (double v : a.intensity) peak = std::max(peak, v);
    for (std::size_t i = 0; i < a.intensity.size(); ++i)
        worst = std::max(worst, std::abs(a.intensity[i] - b.intensity[i]));
    const double rel = peak > 0.0 ? worst / peak : worst;
    std::printf("check channel-merge: max rel diff %.3e (limit 1e-9) -> %s\n",
                rel, rel < 1e-9 ? "pass" : "FAIL");
    return rel < 1e-9;
}

bool check_determinism() {
    rmb::SolverSetup setup;
    setup.transition = rmb::oh1612();
    setup.timescales = rmb::TimescaleSpec::validated(0.1, 1.2e-3);
    setup.beta = 0.5;
    setup.length_rest = 4.2e13;
    setup.channels = rmb::channel_layout(setup.transition, 1e-3, {-20, 20},
                                         {6e3, 6e3});
    setup.tipping_angle = rmb::tipping_angle(
        rmb::particle_number(1.2e4, setup.transition.lambda_rest, setup.length_rest));
    setup.boundary_intensity = 0.0;
    setup.tau_max_rest = 1e-3;
    setup.n_z = 60;
    setup.n_tau = 1501;

    rmb::RunOptions serial_opts, omp_opts;
    serial_opts.kernel = rmb::Kernel::serial;
    omp_opts.kernel = rmb::Kernel::openmp;
    const auto a = rmb::Solver(setup, serial_opts).run();
    const auto b = rmb::Solver(setup, omp_opts).run();
    bool identical = a.endfire_field.size() == b.endfire_field.size();
    for (std::size_t i = 0; identical && i < a.endfire_field.size(); ++i)
        identical = a.endfire_field[i] == b.endfire_field[i];
    std::printf("check kernel-determinism: serial vs OpenMP %s -> %s\n",
                identical ? "bit-identical" : "DIFFER",
                identical ? "pass" : "FAIL");
    return identical;
}

int do_check() {
    bool ok = true;
    ok &= check_bessel();
    ok &= check_channel_merge();
    ok &= check_determinism();
    std::printf("check: %s\n", ok ? "all pass" : "FAILURES");
    return ok ? 0 : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"relativistic Maxwell-Bloch simulator"};
    app.require_subcommand(1);

    // run
    auto* run_cmd = app.add_subcommand("run", "simulate a scenario");
    std::string config_path, run_preset, output_dir, kernel_name = "openmp";
    auto* cfg_opt = run_cmd->add_option("--config", config_path,
                                        "scenario configuration file");
    run_cmd->add_option("--preset", run_preset, "built-in preset name")
        ->excludes(cfg_opt);
    run_cmd->add_option("--output", output_dir,
                        "output directory (overrides config and RMB_OUTPUT_DIR)");
    run_cmd->add_option("--kernel", kernel_name, "serial or openmp")
        ->check(CLI::IsMember({"serial", "openmp"}));

    // preset
    auto* preset_cmd = app.add_subcommand("preset", "built-in scenario presets");
    preset_cmd->require_subcommand(1);
    auto* preset_list = preset_cmd->add_subcommand("list", "list preset names");
    auto* preset_show =
        preset_cmd->add_subcommand("show", "print a preset's configuration");
    std::string show_name;
    preset_show->add_option("name", show_name, "preset name")->required();
    auto* preset_emit =
        preset_cmd->add_subcommand("emit", "write a preset's configuration to a file");
    std::string emit_name, emit_path;
    preset_emit->add_option("name", emit_name, "preset name")->required();
    preset_emit->add_option("--out", emit_path, "destination path")->required();

    // analytic
    auto* analytic =
        app.add_subcommand("analytic", "evaluate closed-form results");
    analytic->require_subcommand(1);
    AnalyticInputs in;
    auto* a_tr = analytic->add_subcommand("tr", "superradiance time T_R'");
    add_analytic_flags(a_tr, in, true, false);
    auto* a_dipole = analytic->add_subcommand("dipole", "dipole moment d'");
    add_analytic_flags(a_dipole, in, false, false);
    auto* a_n = analytic->add_subcommand("n", "particle number N");
    add_analytic_flags(a_n, in, true, false);
    auto* a_theta = analytic->add_subcommand("theta", "tipping angle theta0");
    add_analytic_flags(a_theta, in, true, false);
    auto* a_isat = analytic->add_subcommand("isat", "saturation intensity");
    add_analytic_flags(a_isat, in, false, true);
    auto* a_gain = analytic->add_subcommand("gain", "gain coefficient alpha'");
    add_analytic_flags(a_gain, in, true, true);
    auto* a_sat = analytic->add_subcommand("sat", "saturated maser profile I(z)");
    add_analytic_flags(a_sat, in, true, true);
    a_sat->add_option("--z", in.z, "observer-frame position z (m)")->required();
    auto* a_unsat =
        analytic->add_subcommand("unsat", "unsaturated maser profile I(z)");
    add_analytic_flags(a_unsat, in, true, true);
    a_unsat->add_option("--z", in.z, "observer-frame position z (m)")->required();
    a_unsat->add_option("--i0", in.i0, "background intensity at z = 0 (W/m^2)")
        ->required();
    auto* a_bridge = analytic->add_subcommand(
        "bridge", "saturable-gain profile I(z) spanning both regimes");
    add_analytic_flags(a_bridge, in, true, true);
    a_bridge->add_option("--z", in.z, "observer-frame position z (m)")->required();
    a_bridge->add_option("--i0", in.i0, "background intensity at z = 0 (W/m^2)")
        ->required();
    auto* a_delay = analytic->add_subcommand("delay", "delay-time estimate tau_D");
    add_analytic_flags(a_delay, in, true, false);

    // check
    auto* check_cmd =
        app.add_subcommand("check", "reduced-scale invariant/oracle self-check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "error: usage: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*run_cmd) {
            if (config_path.empty() && run_preset.empty())
                throw rmb::ConfigError(
                    "constraint violation: run needs --config or --preset");
            return do_run(config_path, run_preset, output_dir, kernel_name);
        }
        if (*preset_list) {
            for (const auto& name : rmb::preset_names()) std::cout << name << '\n';
            return 0;
        }
        if (*preset_show) {
            std::cout << rmb::emit_config(rmb::preset(show_name));
            return 0;
        }
        if (*preset_emit) {
            std::ofstream out(emit_path, std::ios::binary);
            if (!out)
                throw rmb::RunError("io: cannot open '" + emit_path + "' for writing");
            out << rmb::emit_config(rmb::preset(emit_name));
            std::cout << emit_path << '\n';
            return 0;
        }
        if (*a_tr) {
            print_value("T_R'", in.tr_rest(), "s");
            return 0;
        }
        if (*a_dipole) {
            print_value("d'", in.transition().dipole_rest, "C m");
            return 0;
        }
        if (*a_n) {
            print_value("N", in.sample().particle_count, "");
            return 0;
        }
        if (*a_theta) {
            print_value("theta0", in.sample().tipping_angle, "rad");
            return 0;
        }
        if (*a_isat) {
            const double isat_rest = rmb::saturation_intensity(
                in.transition().dipole_rest, in.t1, in.t2);
            print_value("I_sat (rest)", isat_rest, "W/m^2");
            if (in.beta != 0.0)
                print_value("I_sat (observer)",
                            rmb::saturation_intensity(
                                in.transition().dipole_rest,
                                rmb::relativity::timescale_to_observer(in.t1, in.beta),
                                rmb::relativity::timescale_to_observer(in.t2, in.beta)),
                            "W/m^2");
            return 0;
        }
        if (*a_gain) {
            const double alpha =
                rmb::gain_coefficient_rest(in.t2, in.length, in.tr_rest());
            print_value("alpha'", alpha, "1/m");
            print_value("alpha' L'", alpha * in.length, "");
            return 0;
        }
        if (*a_sat || *a_unsat || *a_bridge) {
            const auto transition = in.transition();
            const auto sample =
                rmb::SampleSpec::fresnel_one(transition, in.length, in.ntot);
            const auto timescales = rmb::TimescaleSpec::validated(in.t1, in.t2);
            if (*a_sat) {
                print_value("I(z)",
                            rmb::steady_state::saturated_profile(
                                in.z, transition, sample, timescales, in.beta),
                            "W/m^2");
                return 0;
            }
            rmb::steady_state::MaserOperatingPoint point;
            point.background_intensity = in.i0;
            point.gain_rest =
                rmb::gain_coefficient_rest(in.t2, in.length, in.tr_rest());
            point.saturation_intensity = rmb::saturation_intensity(
                transition.dipole_rest,
                rmb::relativity::timescale_to_observer(in.t1, in.beta),
                rmb::relativity::timescale_to_observer(in.t2, in.beta));
            point.beta = in.beta;
            point.length_observer =
                rmb::relativity::length_to_observer(in.length, in.beta);
            print_value("I(z)",
                        *a_unsat
                            ? rmb::steady_state::unsaturated_profile(in.z, point)
                            : rmb::steady_state::saturable_profile(in.z, point),
                        "W/m^2");
            return 0;
        }
        if (*a_delay) {
            const double tr_obs =
                rmb::relativity::timescale_to_observer(in.tr_rest(), in.beta);
            print_value("tau_D",
                        rmb::steady_state::delay_time_estimate(
                            tr_obs, in.sample().tipping_angle),
                        "s");
            return 0;
        }
        if (*check_cmd) return do_check();
    } catch (const rmb::ConfigError& e) {
        std::cerr << "error: config: " << e.what() << '\n';
        return kExitConfig;
    } catch (const rmb::RunError& e) {
        const bool io = std::string(e.what()).rfind("io:", 0) == 0;
        std::cerr << "error: " << (io ? "" : "runtime: ") << e.what() << '\n';
        return io ? kExitIo : kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: config: " << e.what() << '\n';
        return kExitConfig;
    }
    std::cerr << "error: usage: no subcommand given\n";
    return kExitUsage;
}
