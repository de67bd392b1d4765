#include "rmb/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rmb/constants.hpp"
#include "rmb/relativity.hpp"

namespace rmb::steady_state {

double steady_inversion(double n0_rest, double intensity_ratio) {
    if (intensity_ratio < 0.0)
        throw std::domain_error("steady_inversion: I/I_sat must be >= 0");
    return n0_rest / (1.0 + intensity_ratio);
}

namespace {
void require_in_sample(double z, double length) {
    if (z < 0.0 || z > length)
        throw std::domain_error("steady_state: z outside the sample [0, L]");
}
}  // namespace

double unsaturated_profile(double z, const MaserOperatingPoint& point) {
    require_in_sample(z, point.length_observer);
    const double alpha = relativity::lorentz_gamma(point.beta) * point.gain_rest;
    return point.background_intensity * std::exp(alpha * z);
}

double saturated_profile(double z, const TransitionSpec& transition,
                         const SampleSpec& sample, const TimescaleSpec& timescales,
                         double beta) {
    const double length_obs =
        relativity::length_to_observer(sample.length_rest, beta);
    require_in_sample(z, length_obs);
    const double slope_rest = constants::hbar * transition.omega0_rest *
                              sample.inversion_density_rest /
                              (8.0 * timescales.t1_rest);
    return relativity::intensity_boost(beta) * slope_rest *
           relativity::lorentz_gamma(beta) * z;
}

double bessel_i0(double x) {
    // Ascending series; all terms positive, no cancellation. Converges fast
    // for the argument range used here (|x| up to a few tens).
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 1000; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < 1e-12 * sum) break;
    }
    return sum;
}

double linear_regime_polarization(double z, double tau, double seed_polarization,
                                  double length_observer, double tr_observer) {
    if (z < 0.0 || tau < 0.0)
        throw std::domain_error("linear_regime_polarization: z, tau must be >= 0");
    const double arg = 2.0 * std::sqrt(tau * z / (length_observer * tr_observer));
    return seed_polarization * bessel_i0(arg);
}

double delay_time_estimate(double tr_observer, double tipping_angle) {
    if (!(tr_observer > 0.0))
        throw std::domain_error("delay_time_estimate: T_R must be > 0");
    if (!(tipping_angle > 0.0 && tipping_angle < 1.0))
        throw std::domain_error("delay_time_estimate: theta0 must be in (0, 1)");
    const double l = std::log(tipping_angle / (2.0 * constants::pi));
    return 0.25 * tr_observer * l * l;
}

double saturable_profile(double z, const MaserOperatingPoint& point) {
    require_in_sample(z, point.length_observer);
    if (!(point.saturation_intensity > 0.0))
        throw std::domain_error("saturable_profile: I_sat must be > 0");
    const double alpha = relativity::lorentz_gamma(point.beta) * point.gain_rest;
    const double isat = point.saturation_intensity;
    auto rhs = [&](double intensity) {
        return alpha * intensity / (1.0 + intensity / isat);
    };

    // Cash-Karp RK4(5) with step doubling on the scalar ODE.
    static constexpr double b[6][5] = {
        {},
        {1.0 / 5.0},
        {3.0 / 40.0, 9.0 / 40.0},
        {3.0 / 10.0, -9.0 / 10.0, 6.0 / 5.0},
        {-11.0 / 54.0, 5.0 / 2.0, -70.0 / 27.0, 35.0 / 27.0},
        {1631.0 / 55296.0, 175.0 / 512.0, 575.0 / 13824.0, 44275.0 / 110592.0,
         253.0 / 4096.0}};
    static constexpr double c5[6] = {37.0 / 378.0,  0.0, 250.0 / 621.0,
                                     125.0 / 594.0, 0.0, 512.0 / 1771.0};
    static constexpr double c4[6] = {2825.0 / 27648.0,  0.0,
                                     18575.0 / 48384.0, 13525.0 / 55296.0,
                                     277.0 / 14336.0,   1.0 / 4.0};

    double intensity = point.background_intensity;
    if (intensity == 0.0 || z == 0.0) return intensity;
    double pos = 0.0;
    double h = std::min(z, 0.1 / alpha);
    const double tol = 1e-12;
    while (pos < z) {
        h = std::min(h, z - pos);
        double k[6];
        k[0] = rhs(intensity);
        for (int s = 1; s < 6; ++s) {
            double y = intensity;
            for (int j = 0; j < s; ++j) y += h * b[s][j] * k[j];
            k[s] = rhs(y);
        }
        double y5 = intensity, y4 = intensity;
        for (int s = 0; s < 6; ++s) {
            y5 += h * c5[s] * k[s];
            y4 += h * c4[s] * k[s];
        }
        const double err = std::abs(y5 - y4) / std::max(std::abs(y5), 1e-300);
        if (err <= tol || h <= 1e-12 * z) {
            pos += h;
            intensity = y5;
            if (err > 0.0)
                h *= std::min(5.0, 0.9 * std::pow(tol / err, 0.2));
            else
                h *= 5.0;
        } else {
            h *= std::max(0.1, 0.9 * std::pow(tol / err, 0.25));
        }
    }
    return intensity;
}

}  // namespace rmb::steady_state
