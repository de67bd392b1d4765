// params.hpp - rest-frame transition/sample specifications and derived
// quantities: dipole moment, superradiance timescale, saturation intensity,
// gain coefficient, particle number, tipping angle. All SI.

#pragma once

#include <stdexcept>

namespace rmb {

// Rest-frame atomic (or molecular) transition data.
struct TransitionSpec {
    double lambda_rest = 0.0;    // wavelength lambda' (m)
    double gamma_sp_rest = 0.0;  // spontaneous emission rate Gamma' (1/s)
    double omega0_rest = 0.0;    // angular Bohr frequency omega0' (rad/s)
    double dipole_rest = 0.0;    // dipole magnitude d' (C m)

    // Builds a consistent spec from wavelength and Einstein A coefficient.
    static TransitionSpec from_line(double lambda_rest, double gamma_sp_rest);
};

// The OH 1612 MHz transition (lambda' = 18.6 cm, Gamma' = 1.282e-11 1/s).
TransitionSpec oh1612();

// Cylinder geometry and inversion, Fresnel number fixed at unity so the
// cross-section is always derived as A' = lambda' L'.
struct SampleSpec {
    double length_rest = 0.0;             // L' (m)
    double inversion_density_rest = 0.0;  // total density difference n_t' (1/m^3)
    double cross_section_rest = 0.0;      // A' = lambda' L' (m^2)
    double particle_count = 0.0;          // N = n_t' A' L'
    double tipping_angle = 0.0;           // theta0 = 2 / sqrt(N) (rad)

    static SampleSpec fresnel_one(const TransitionSpec& transition,
                                  double length_rest,
                                  double inversion_density_rest);
};

// Phenomenological relaxation (T1') and dephasing (T2') timescales.
struct TimescaleSpec {
    double t1_rest = 0.0;  // relaxation T1' (s)
    double t2_rest = 0.0;  // dephasing T2' (s)

    static TimescaleSpec validated(double t1_rest, double t2_rest);
};

/// Einstein-A inversion d' = sqrt(3 pi eps0 hbar c^3 Gamma' / omega0'^3).
double derive_dipole(double gamma_sp_rest, double omega0_rest);

/// Characteristic superradiance time T_R' = 8 pi / (3 lambda'^2 n_t' L' Gamma').
double superradiance_time_rest(double lambda_rest, double inversion_density_rest,
                               double length_rest, double gamma_sp_rest);

/// Particle number N = n_t' lambda' L'^2 under Fresnel-one geometry.
double particle_number(double inversion_density_rest, double lambda_rest,
                       double length_rest);

/// Tipping angle theta0 = 2 / sqrt(N), from the unrounded particle number.
double tipping_angle(double particle_count);

/// Saturation intensity I_sat = c eps0 hbar^2 / (8 d'^2 T1 T2). Rest-frame
/// timescales give the rest-frame value, observer-frame timescales the
/// observer-frame one.
double saturation_intensity(double dipole_rest, double t1, double t2);

/// Rest-frame gain coefficient alpha' = 2 T2' / (L' T_R').
double gain_coefficient_rest(double t2_rest, double length_rest, double tr_rest);

/// True when T2' > T_R', the condition for a superradiant transient.
bool superradiance_condition(double t2_rest, double tr_rest);

}  // namespace rmb
