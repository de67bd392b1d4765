// relativity.hpp - Lorentz kinematics linking rest-frame and observer-frame
// quantities. Sign convention: beta > 0 means the source approaches the
// observer, beta < 0 means it recedes.

#pragma once

#include <cmath>
#include <stdexcept>

#include "rmb/constants.hpp"

namespace rmb::relativity {

// Largest |dv_rest| accepted by the linearized velocity-offset transform.
// Beyond 0.01c the dropped quadratic terms exceed ~1e-4 relative.
inline constexpr double max_linear_offset_fraction = 0.01;

inline void require_subluminal(double beta) {
    if (!(std::abs(beta) < 1.0))
        throw std::domain_error("relativity: |beta| must be < 1");
}

/// Lorentz boost gamma = (1 - beta^2)^(-1/2).
inline double lorentz_gamma(double beta) {
    require_subluminal(beta);
    return 1.0 / std::sqrt((1.0 - beta) * (1.0 + beta));
}

/// Observer-frame angular frequency of a rest-frame line at omega0_rest.
inline double doppler_frequency(double omega0_rest, double beta) {
    if (!(omega0_rest > 0.0))
        throw std::domain_error("doppler_frequency: omega0_rest must be > 0");
    return lorentz_gamma(beta) * omega0_rest * (1.0 + beta);
}

/// Duration seen by the observer: compressed for beta > 0, dilated for beta < 0.
inline double timescale_to_observer(double t_rest, double beta) {
    if (!(t_rest > 0.0))
        throw std::domain_error("timescale_to_observer: t_rest must be > 0");
    require_subluminal(beta);
    return t_rest * std::sqrt((1.0 - beta) / (1.0 + beta));
}

/// Intensity scaling factor (1 + beta) / (1 - beta) from the field transform.
inline double intensity_boost(double beta) {
    require_subluminal(beta);
    return (1.0 + beta) / (1.0 - beta);
}

/// Length contraction L = L' / gamma.
inline double length_to_observer(double length_rest, double beta) {
    if (!(length_rest > 0.0))
        throw std::domain_error("length_to_observer: length_rest must be > 0");
    return length_rest / lorentz_gamma(beta);
}

/// Velocity offset from the central channel, mapped to the observer frame:
/// dv = dv' (1 - beta^2). Linearized form, only valid for dv' << c.
inline double velocity_offset_to_observer(double dv_rest, double beta) {
    require_subluminal(beta);
    if (!(std::abs(dv_rest) < max_linear_offset_fraction * constants::c))
        throw std::invalid_argument(
            "velocity_offset_to_observer: |dv_rest| must be < 0.01 c");
    return dv_rest * (1.0 - beta) * (1.0 + beta);
}

}  // namespace rmb::relativity
