// bench_kernels - times the serial reference kernels against the OpenMP
// kernels on a mid-size grid and verifies the results are bit-identical.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "rmb/params.hpp"
#include "rmb/solver.hpp"

namespace {

double run_timed(const rmb::SolverSetup& setup, rmb::Kernel kernel,
                 rmb::SimulationResult& result) {
    rmb::RunOptions options;
    options.kernel = kernel;
    options.series_stride = 16;
    rmb::Solver solver(setup, options);
    const auto t0 = std::chrono::steady_clock::now();
    result = solver.run();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    int n_z = 300, n_tau = 4001, repeats = 3;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--nz" && i + 1 < argc)
            n_z = std::atoi(argv[++i]);
        else if (arg == "--ntau" && i + 1 < argc)
            n_tau = std::atoi(argv[++i]);
        else if (arg == "--repeats" && i + 1 < argc)
            repeats = std::atoi(argv[++i]);
        else {
            std::fprintf(stderr,
                         "usage: bench_kernels [--nz N] [--ntau N] [--repeats N]\n");
            return 64;
        }
    }

    rmb::SolverSetup setup;
    setup.transition = rmb::oh1612();
    setup.timescales = rmb::TimescaleSpec::validated(0.1, 1.2e-3);
    setup.beta = 0.0;
    setup.length_rest = 4.2e13;
    setup.tau_max_rest = 2e-3;
    setup.channels = rmb::channel_layout(setup.transition, setup.tau_max_rest,
                                         {-20, 20}, {6e3, 6e3});
    setup.tipping_angle = rmb::tipping_angle(rmb::particle_number(
        1.2e4, setup.transition.lambda_rest, setup.length_rest));
    setup.n_z = n_z;
    setup.n_tau = n_tau;

    std::printf("grid: %d z-points x %d tau-steps x %zu channels, %d repeats\n",
                n_z, n_tau, setup.channels.size(), repeats);

    double best_serial = 1e300, best_omp = 1e300;
    rmb::SimulationResult serial_result, omp_result;
    for (int r = 0; r < repeats; ++r) {
        best_serial = std::min(best_serial,
                               run_timed(setup, rmb::Kernel::serial, serial_result));
        best_omp =
            std::min(best_omp, run_timed(setup, rmb::Kernel::openmp, omp_result));
    }

    bool identical = serial_result.endfire_field.size() ==
                     omp_result.endfire_field.size();
    for (std::size_t i = 0; identical && i < serial_result.endfire_field.size();
         ++i)
        identical = serial_result.endfire_field[i] == omp_result.endfire_field[i];

    std::printf("serial: %8.3f ms\n", best_serial * 1e3);
    std::printf("openmp: %8.3f ms  (speedup %.2fx)\n", best_omp * 1e3,
                best_serial / best_omp);
    std::printf("results bit-identical: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
