#include "rmb/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rmb/constants.hpp"
#include "rmb/detail/kernels.hpp"
#include "rmb/errors.hpp"
#include "rmb/relativity.hpp"

namespace rmb {

using constants::c;
using constants::eps0;
using constants::hbar;

double fundamental_velocity_step(const TransitionSpec& transition,
                                 double tau_max_rest) {
    if (!(tau_max_rest > 0.0))
        throw ConfigError("channel layout: tau_max_rest must be > 0");
    return transition.lambda_rest / tau_max_rest;
}

std::vector<VelocityChannel> channel_layout(const TransitionSpec& transition,
                                            double tau_max_rest,
                                            const std::vector<int>& offsets_k,
                                            const std::vector<double>& densities) {
    if (offsets_k.empty())
        throw ConfigError("channel layout: channel list must be nonempty");
    if (offsets_k.size() != densities.size())
        throw ConfigError("channel layout: offsets_k and densities differ in length");
    const double dv = fundamental_velocity_step(transition, tau_max_rest);
    std::vector<VelocityChannel> channels;
    channels.reserve(offsets_k.size());
    for (std::size_t i = 0; i < offsets_k.size(); ++i) {
        if (!(densities[i] > 0.0))
            throw ConfigError("channel layout: channel density must be > 0");
        channels.push_back({offsets_k[i] * dv, densities[i]});
    }
    return channels;
}

BlochDerivative bloch_rhs(double inversion, Complex polarization_plus,
                          Complex field_plus, double wavenumber_obs,
                          double dv_obs, double t1_obs, double t2_obs,
                          double dipole_rest, double lambda_n, double lambda_p) {
    const Complex i{0.0, 1.0};
    const Complex pe = polarization_plus * field_plus;
    BlochDerivative d;
    // -(1/i hbar)(P+ E+ - P- E-) = -(2/hbar) Im(P+ E+)
    d.dn_dtau = -2.0 / hbar * pe.imag() - inversion / t1_obs + lambda_n;
    d.dp_dtau = i * (wavenumber_obs * dv_obs) * polarization_plus +
                i * (2.0 * dipole_rest * dipole_rest / hbar) * inversion *
                    std::conj(field_plus) -
                polarization_plus / t2_obs + lambda_p;
    return d;
}

double field_coupling_prefactor(double omega0_rest, double beta) {
    // Consistent with the linear-regime growth 1/(L T_R) and the maser gain
    // alpha = gamma alpha'; equals gamma * omega / (2 c eps0) for the
    // Doppler-shifted observer frequency omega.
    return relativity::lorentz_gamma(beta) *
           std::sqrt((1.0 + beta) / (1.0 - beta)) * omega0_rest /
           (2.0 * c * eps0);
}

std::vector<Complex> integrate_field(
    const std::vector<std::vector<Complex>>& polarization_plus, double dz,
    double omega0_rest, double beta, Complex boundary) {
    if (polarization_plus.empty())
        throw ConfigError("integrate_field: no channels");
    const std::size_t n_z = polarization_plus.front().size();
    const Complex coeff{0.0, 0.5 * dz * field_coupling_prefactor(omega0_rest, beta)};
    std::vector<Complex> field(n_z);
    field[0] = boundary;
    Complex src_prev{0.0, 0.0};
    for (const auto& p : polarization_plus) src_prev += std::conj(p[0]);
    for (std::size_t j = 1; j < n_z; ++j) {
        Complex src{0.0, 0.0};
        for (const auto& p : polarization_plus) src += std::conj(p[j]);
        field[j] = field[j - 1] + coeff * (src_prev + src);
        src_prev = src;
    }
    return field;
}

namespace {

DerivedParams derive(const SolverSetup& s, GridSpec& grid) {
    if (s.channels.empty()) throw ConfigError("solver: channel list is empty");
    if (s.n_z < 2 || s.n_tau < 2)
        throw ConfigError("solver: grid needs n_z >= 2 and n_tau >= 2");
    if (!(s.tau_max_rest > 0.0))
        throw ConfigError("solver: tau_max_rest must be > 0");
    if (!(s.length_rest > 0.0))
        throw ConfigError("solver: length_rest must be > 0");
    if (s.boundary_intensity < 0.0)
        throw ConfigError("solver: boundary_intensity must be >= 0");

    DerivedParams d;
    const double beta = s.beta;
    d.gamma = relativity::lorentz_gamma(beta);
    d.omega_obs = relativity::doppler_frequency(s.transition.omega0_rest, beta);
    d.wavenumber_obs = d.omega_obs / c;
    d.length_obs = relativity::length_to_observer(s.length_rest, beta);
    d.tau_max_obs = relativity::timescale_to_observer(s.tau_max_rest, beta);
    d.t1_obs = relativity::timescale_to_observer(s.timescales.t1_rest, beta);
    d.t2_obs = relativity::timescale_to_observer(s.timescales.t2_rest, beta);

    d.n_total_rest = 0.0;
    for (const auto& ch : s.channels) {
        if (!(ch.inversion_density_rest > 0.0))
            throw ConfigError("solver: channel density must be > 0");
        d.n_total_rest += ch.inversion_density_rest;
    }
    d.tr_rest = superradiance_time_rest(s.transition.lambda_rest, d.n_total_rest,
                                        s.length_rest, s.transition.gamma_sp_rest);
    d.tr_obs = relativity::timescale_to_observer(d.tr_rest, beta);
    d.particle_count = particle_number(d.n_total_rest, s.transition.lambda_rest,
                                       s.length_rest);
    d.theta0 = s.tipping_angle;
    d.alpha_rest = gain_coefficient_rest(s.timescales.t2_rest, s.length_rest,
                                         d.tr_rest);
    d.alpha_obs = d.gamma * d.alpha_rest;
    d.isat_rest = saturation_intensity(s.transition.dipole_rest,
                                       s.timescales.t1_rest, s.timescales.t2_rest);
    d.isat_obs = saturation_intensity(s.transition.dipole_rest, d.t1_obs, d.t2_obs);
    d.superradiant = superradiance_condition(s.timescales.t2_rest, d.tr_rest);

    const double n0_ref = 0.5 * d.n_total_rest;
    const double dip = s.transition.dipole_rest;
    d.density_scale = n0_ref;
    d.pol_scale = dip * n0_ref;
    d.field_scale = hbar / (2.0 * dip * d.tr_obs);
    d.kappa = relativity::lorentz_gamma(beta) *
              std::sqrt((1.0 + beta) / (1.0 - beta)) * s.transition.omega0_rest *
              dip * dip * d.tr_obs * d.length_obs * n0_ref / (hbar * c * eps0);

    d.detuning.clear();
    d.dv_obs.clear();
    for (const auto& ch : s.channels) {
        d.dv_obs.push_back(
            relativity::velocity_offset_to_observer(ch.dv_rest, beta));
        // The channel detuning k dv is a frequency offset of the emitted line
        // and transforms with the full Doppler factor, so k dv / omega (and
        // hence the detuning in units of 1/T_R) is frame-invariant.  The
        // wavenumber already carries the Doppler factor; pairing it with the
        // rest-frame velocity offset realizes exactly that transform.
        d.detuning.push_back(d.wavenumber_obs * ch.dv_rest * d.tr_obs);
    }

    grid.n_z = s.n_z;
    grid.n_tau = s.n_tau;
    grid.tau_max = d.tau_max_obs;
    grid.length_observer = d.length_obs;

    // Step-size sanity: resolve the superradiant ringing, the dephasing, and
    // the channel beat.
    const double dtau = grid.dtau();
    if (dtau > d.tr_obs / 50.0)
        throw ConfigError("solver: dtau exceeds T_R/50; increase n_tau");
    if (dtau > d.t2_obs / 50.0)
        throw ConfigError("solver: dtau exceeds T2/50; increase n_tau");
    double max_dv = 0.0;
    for (const auto& ch : s.channels)
        max_dv = std::max(max_dv, std::abs(ch.dv_rest));
    if (dtau * d.wavenumber_obs * max_dv > 0.1)
        throw ConfigError("solver: dtau * k * max|dv| exceeds 0.1; increase n_tau");
    return d;
}

}  // namespace

Solver::Solver(SolverSetup setup, RunOptions options)
    : setup_(std::move(setup)), options_(std::move(options)) {
    derived_ = derive(setup_, grid_);
    if (options_.series_stride < 1)
        throw ConfigError("solver: series_stride must be >= 1");
}

SimulationResult Solver::run() {
    using detail::NondimCoeffs;
    using detail::NondimState;

    const int n_z = grid_.n_z;
    const int n_channels = static_cast<int>(setup_.channels.size());

    NondimCoeffs coeffs;
    coeffs.n_z = n_z;
    coeffs.n_channels = n_channels;
    coeffs.dz = 1.0 / (n_z - 1);
    coeffs.dtau = grid_.dtau() / derived_.tr_obs;
    coeffs.inv_t1 = derived_.tr_obs / derived_.t1_obs;
    coeffs.inv_t2 = derived_.tr_obs / derived_.t2_obs;
    coeffs.kappa = derived_.kappa;
    coeffs.detune = derived_.detuning;
    const double boundary_amp =
        std::sqrt(2.0 * setup_.boundary_intensity / (c * eps0));
    coeffs.boundary = Complex{boundary_amp / derived_.field_scale, 0.0};

    std::vector<double> frac(n_channels);
    for (int v = 0; v < n_channels; ++v)
        frac[v] = setup_.channels[v].inversion_density_rest / derived_.n_total_rest;

    const double sin_theta0 = std::sin(derived_.theta0);
    coeffs.lam_n.assign(n_channels, 0.0);
    coeffs.lam_p.assign(n_channels, 0.0);
    if (setup_.pumps.enabled) {
        for (int v = 0; v < n_channels; ++v) {
            if (setup_.pumps.lambda_n) {
                coeffs.lam_n[v] = *setup_.pumps.lambda_n * derived_.tr_obs /
                                  derived_.density_scale;
            } else {
                coeffs.lam_n[v] = frac[v] * coeffs.inv_t1;
            }
            if (setup_.pumps.lambda_p) {
                coeffs.lam_p[v] =
                    *setup_.pumps.lambda_p * derived_.tr_obs / derived_.pol_scale;
            } else {
                coeffs.lam_p[v] = frac[v] * sin_theta0 * coeffs.inv_t2;
            }
        }
    }

    const detail::Kernels kernels = options_.kernel == Kernel::serial
                                        ? detail::serial_kernels()
                                        : detail::openmp_kernels();

    // Initial state: each channel at its pump fixed point n' = n0', polarized
    // with the tipping-angle seed at uniform real phase.
    NondimState state;
    state.resize(n_channels, n_z);
    for (int v = 0; v < n_channels; ++v) {
        std::fill(state.n[v].begin(), state.n[v].end(), frac[v]);
        std::fill(state.p[v].begin(), state.p[v].end(),
                  Complex{frac[v] * sin_theta0, 0.0});
    }

    NondimState k1, k2, k3, k4, tmp;
    for (NondimState* b : {&k1, &k2, &k3, &k4, &tmp}) b->resize(n_channels, n_z);
    std::vector<Complex> field(n_z), stage_field(n_z);
    detail::compute_field(coeffs, state, field);

    // Snapshot step indices (nearest grid step).
    std::vector<std::pair<int, std::size_t>> snapshot_steps;
    for (std::size_t i = 0; i < options_.snapshot_taus.size(); ++i) {
        const double tau = options_.snapshot_taus[i];
        if (tau < 0.0 || tau > grid_.tau_max)
            throw ConfigError("solver: snapshot tau outside [0, tau_max]");
        snapshot_steps.emplace_back(
            static_cast<int>(std::lround(tau / grid_.dtau())), i);
    }

    SimulationResult result;
    result.derived = derived_;
    result.grid = grid_;
    result.channels.resize(n_channels);
    result.snapshots.resize(options_.snapshot_taus.size());

    const double dtau_si = grid_.dtau();
    const double intensity_scale =
        0.5 * c * eps0 * derived_.field_scale * derived_.field_scale;

    auto record_series = [&](int step) {
        result.tau.push_back(step * dtau_si);
        const Complex e_end = field[n_z - 1];
        result.endfire_field.push_back(e_end * derived_.field_scale);
        result.intensity.push_back(intensity_scale * std::norm(e_end));
        for (int v = 0; v < n_channels; ++v) {
            double sum = 0.0, max_p = 0.0;
            for (int j = 0; j < n_z; ++j) {
                sum += state.n[v][j];
                max_p = std::max(max_p, std::abs(state.p[v][j]));
            }
            result.channels[v].mean_inversion.push_back(
                sum / n_z * derived_.density_scale);
            result.channels[v].max_abs_polarization.push_back(
                max_p * derived_.pol_scale);
        }
        // SVEA diagnostic: envelope must vary slowly on the carrier scale.
        const double k_nd =
            derived_.wavenumber_obs * derived_.length_obs * coeffs.dz;
        for (int j = 1; j < n_z; ++j) {
            const double mag = std::max(std::abs(field[j]), std::abs(field[j - 1]));
            if (mag < 1e-290) continue;
            const double ratio = std::abs(field[j] - field[j - 1]) / (k_nd * mag);
            result.svea_ratio_max = std::max(result.svea_ratio_max, ratio);
        }
        if (options_.track_bloch_drift) {
            for (int v = 0; v < n_channels; ++v) {
                const double inv_f = 1.0 / frac[v];
                for (int j = 0; j < n_z; ++j) {
                    const double nn = state.n[v][j] * inv_f;
                    const double pp = std::abs(state.p[v][j]) * inv_f;
                    result.bloch_drift_max = std::max(
                        result.bloch_drift_max, std::abs(nn * nn + pp * pp - 1.0));
                }
            }
        }
    };

    auto record_snapshots = [&](int step) {
        for (const auto& [snap_step, idx] : snapshot_steps) {
            if (snap_step != step) continue;
            Snapshot& snap = result.snapshots[idx];
            snap.tau = step * dtau_si;
            snap.field.resize(n_z);
            for (int j = 0; j < n_z; ++j)
                snap.field[j] = field[j] * derived_.field_scale;
            snap.inversion.assign(n_channels, std::vector<double>(n_z));
            snap.polarization.assign(n_channels, std::vector<Complex>(n_z));
            for (int v = 0; v < n_channels; ++v) {
                for (int j = 0; j < n_z; ++j) {
                    snap.inversion[v][j] = state.n[v][j] * derived_.density_scale;
                    snap.polarization[v][j] = state.p[v][j] * derived_.pol_scale;
                }
            }
        }
    };

    record_series(0);
    record_snapshots(0);

    const double h = coeffs.dtau;
    for (int step = 1; step < grid_.n_tau; ++step) {
        // Field is an instantaneous constraint: recomputed from each
        // substage's polarization estimate, never co-evolved.
        kernels.rhs(coeffs, state, field, k1);
        kernels.axpy(coeffs, state, 0.5 * h, k1, tmp);
        detail::compute_field(coeffs, tmp, stage_field);
        kernels.rhs(coeffs, tmp, stage_field, k2);
        kernels.axpy(coeffs, state, 0.5 * h, k2, tmp);
        detail::compute_field(coeffs, tmp, stage_field);
        kernels.rhs(coeffs, tmp, stage_field, k3);
        kernels.axpy(coeffs, state, h, k3, tmp);
        detail::compute_field(coeffs, tmp, stage_field);
        kernels.rhs(coeffs, tmp, stage_field, k4);
        kernels.combine(coeffs, state, k1, k2, k3, k4);
        detail::compute_field(coeffs, state, field);

        if (!std::isfinite(std::norm(field[n_z - 1]))) {
            // Locate the first non-finite grid point for the diagnostic.
            for (int v = 0; v < n_channels; ++v)
                for (int j = 0; j < n_z; ++j)
                    if (!std::isfinite(state.n[v][j]) ||
                        !std::isfinite(std::norm(state.p[v][j])))
                        throw RunError("solver: non-finite state at tau=" +
                                       std::to_string(step * dtau_si) + " s, z=" +
                                       std::to_string(j * grid_.dz()) +
                                       " m, channel " + std::to_string(v));
            throw RunError("solver: non-finite field at tau=" +
                           std::to_string(step * dtau_si) + " s");
        }

        if (step % options_.series_stride == 0) record_series(step);
        record_snapshots(step);
    }
    return result;
}

}  // namespace rmb
