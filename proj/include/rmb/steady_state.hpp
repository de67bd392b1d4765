// steady_state.hpp - closed-form maser/superradiance results. These serve
// both as user-facing calculators and as independent oracles for the grid
// solver: linear-regime Bessel growth, unsaturated/saturated intensity
// profiles, steady-state inversion, and a saturable-gain bridge between the
// two maser limits.

#pragma once

#include "rmb/params.hpp"

namespace rmb::steady_state {

// Observer-frame operating point of a maser amplifier column.
struct MaserOperatingPoint {
    double background_intensity = 0.0;  // I0 at z = 0 (W/m^2)
    double gain_rest = 0.0;             // alpha' (1/m)
    double saturation_intensity = 0.0;  // I_sat (W/m^2, observer frame)
    double beta = 0.0;                  // frame velocity
    double length_observer = 0.0;       // L (m), profile domain [0, L]
};

/// Quasi-steady inversion n' = n0' / (1 + I/I_sat).
double steady_inversion(double n0_rest, double intensity_ratio);

/// Unsaturated profile I(z) = I0 exp(gamma alpha' z), valid while I << I_sat.
double unsaturated_profile(double z, const MaserOperatingPoint& point);

/// Saturated profile I(z) = [(1+beta)/(1-beta)] (hbar omega0' n_t' / 8 T1') gamma z.
double saturated_profile(double z, const TransitionSpec& transition,
                         const SampleSpec& sample, const TimescaleSpec& timescales,
                         double beta);

/// Modified Bessel function of the first kind, order zero, to 1e-10 relative.
double bessel_i0(double x);

/// Linear-regime polarization envelope P0 * I0(2 sqrt(tau z / (L T_R))) for a
/// uniform seed P0; L and T_R in the observer frame.
double linear_regime_polarization(double z, double tau, double seed_polarization,
                                  double length_observer, double tr_observer);

/// Heuristic superradiance delay tau_D ~ (T_R/4) ln^2(theta0 / 2 pi).
/// Order-of-magnitude only.
double delay_time_estimate(double tr_observer, double tipping_angle);

/// Saturable-gain bridge: integrates dI/dz = gamma alpha' I / (1 + I/I_sat)
/// from the z = 0 background, covering both maser limits. Adaptive embedded
/// RK (Cash-Karp) to ~1e-10 relative.
double saturable_profile(double z, const MaserOperatingPoint& point);

}  // namespace rmb::steady_state
