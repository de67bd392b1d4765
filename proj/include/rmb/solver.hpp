// solver.hpp - integrates the relativistic Maxwell-Bloch system on a
// retarded-time x space grid for an arbitrary set of velocity channels.
// RK4 in retarded time; the field envelope is an instantaneous constraint
// recomputed by spatial quadrature at every substage.
//
// Internally the system is nondimensionalized (tau/T_R, z/L, n'/n0,
// P'/(d' n0), e = 2 d' T_R E / hbar); the public surface is SI.

#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "rmb/params.hpp"

namespace rmb {

using Complex = std::complex<double>;

// Uniform retarded-time x space grid, observer frame.
struct GridSpec {
    int n_z = 0;                   // spatial points (>= 2)
    int n_tau = 0;                 // retarded-time steps (>= 2)
    double tau_max = 0.0;          // total retarded time (s)
    double length_observer = 0.0;  // L (m)

    double dtau() const { return tau_max / (n_tau - 1); }
    double dz() const { return length_observer / (n_z - 1); }
};

// One velocity subgroup: rest-frame offset from the central velocity and the
// channel's share of the total population density difference.
struct VelocityChannel {
    double dv_rest = 0.0;                 // Delta v' (m/s)
    double inversion_density_rest = 0.0;  // channel n_t' (1/m^3)
};

/// Fundamental rest-frame velocity step dv' = lambda' / tau_max_rest.
double fundamental_velocity_step(const TransitionSpec& transition,
                                 double tau_max_rest);

/// Builds channels at integer multiples k of dv' = lambda' / tau_max_rest.
std::vector<VelocityChannel> channel_layout(const TransitionSpec& transition,
                                            double tau_max_rest,
                                            const std::vector<int>& offsets_k,
                                            const std::vector<double>& densities);

// Pump source terms. Defaults (per channel): Lambda_n = n0'/T1 and
// Lambda_P = n0' d' sin(theta0)/T2 with observer-frame T1, T2. An override
// replaces the default with one SI value applied to every channel.
struct PumpSpec {
    bool enabled = true;
    std::optional<double> lambda_n;  // 1/(m^3 s)
    std::optional<double> lambda_p;  // C/(m^2 s)
};

struct SolverSetup {
    TransitionSpec transition;
    TimescaleSpec timescales;  // rest frame
    double beta = 0.0;
    double length_rest = 0.0;  // L' (m)
    std::vector<VelocityChannel> channels;
    double tipping_angle = 0.0;       // theta0 seeding the initial polarization
    double boundary_intensity = 0.0;  // I0 at z = 0 (W/m^2, observer frame)
    PumpSpec pumps;
    int n_z = 0;
    int n_tau = 0;
    double tau_max_rest = 0.0;  // simulation span in the rest frame (s)
};

enum class Kernel { serial, openmp };

struct RunOptions {
    Kernel kernel = Kernel::openmp;  // falls back to serial without OpenMP
    int series_stride = 1;           // record every n-th step
    std::vector<double> snapshot_taus;  // observer-frame times (s)
    bool track_bloch_drift = false;
};

// Everything derived from a SolverSetup, reported as run metadata.
struct DerivedParams {
    double gamma = 1.0;
    double omega_obs = 0.0;       // rad/s
    double wavenumber_obs = 0.0;  // 1/m
    double tr_rest = 0.0, tr_obs = 0.0;
    double t1_obs = 0.0, t2_obs = 0.0;
    double tau_max_obs = 0.0;
    double length_obs = 0.0;
    double n_total_rest = 0.0;  // sum of channel densities (1/m^3)
    double particle_count = 0.0;
    double theta0 = 0.0;
    double alpha_rest = 0.0, alpha_obs = 0.0;
    double isat_rest = 0.0, isat_obs = 0.0;
    double kappa = 0.0;  // nondimensional field coupling (1 in a consistent frame)
    std::vector<double> detuning;  // per channel, units of 1/T_R
    std::vector<double> dv_obs;    // per channel (m/s)
    double field_scale = 0.0;      // E+ (V/m) per nondimensional field unit
    double pol_scale = 0.0;        // P'+ (C/m^2) per nondimensional unit
    double density_scale = 0.0;    // n' (1/m^3) per nondimensional unit
    bool superradiant = false;     // T2' > T_R'
};

struct ChannelSeries {
    std::vector<double> mean_inversion;        // <n'_v>_z (1/m^3)
    std::vector<double> max_abs_polarization;  // max_z |P'_v| (C/m^2)
};

struct Snapshot {
    double tau = 0.0;  // s
    std::vector<Complex> field;                       // E+(z) (V/m)
    std::vector<std::vector<double>> inversion;       // [channel][z] (1/m^3)
    std::vector<std::vector<Complex>> polarization;   // [channel][z] (C/m^2)
};

struct SimulationResult {
    std::vector<double> tau;              // s, uniform spacing
    std::vector<double> intensity;        // endfire I(tau) at z = L (W/m^2)
    std::vector<Complex> endfire_field;   // E+(L, tau) (V/m)
    std::vector<ChannelSeries> channels;
    std::vector<Snapshot> snapshots;
    DerivedParams derived;
    GridSpec grid;
    double bloch_drift_max = 0.0;  // filled when track_bloch_drift is set
    double svea_ratio_max = 0.0;   // max |dE/dz| / (k |E|) seen on record steps
};

class Solver {
public:
    explicit Solver(SolverSetup setup, RunOptions options = {});

    const DerivedParams& derived() const { return derived_; }
    const GridSpec& grid() const { return grid_; }

    SimulationResult run();

private:
    SolverSetup setup_;
    RunOptions options_;
    GridSpec grid_;
    DerivedParams derived_;
};

// ---- standalone single operations (SI), shared with the test oracles ----

struct BlochDerivative {
    double dn_dtau = 0.0;   // 1/(m^3 s)
    Complex dp_dtau;        // C/(m^2 s)
};

/// Bloch equations at one grid point of one channel, observer-frame
/// timescales, dv_obs already mapped to the observer frame.
BlochDerivative bloch_rhs(double inversion, Complex polarization_plus,
                          Complex field_plus, double wavenumber_obs,
                          double dv_obs, double t1_obs, double t2_obs,
                          double dipole_rest, double lambda_n, double lambda_p);

/// Magnitude of the field-equation prefactor: gamma sqrt((1+beta)/(1-beta))
/// omega0' / (2 c eps0). The full coefficient is i times this.
double field_coupling_prefactor(double omega0_rest, double beta);

/// Cumulative trapezoidal quadrature of dE+/dz = i * prefactor * sum_v P'_v-
/// from z = 0; polarization_plus is [channel][z] on a uniform grid.
std::vector<Complex> integrate_field(
    const std::vector<std::vector<Complex>>& polarization_plus, double dz,
    double omega0_rest, double beta, Complex boundary);

}  // namespace rmb
