#include "rmb/params.hpp"

#include <cmath>
#include <string>

#include "rmb/constants.hpp"

namespace rmb {

namespace {
void require_positive(double x, const char* what) {
    if (!(x > 0.0))
        throw std::domain_error(std::string("params: ") + what + " must be > 0");
}
}  // namespace

double derive_dipole(double gamma_sp_rest, double omega0_rest) {
    require_positive(gamma_sp_rest, "gamma_sp_rest");
    require_positive(omega0_rest, "omega0_rest");
    using namespace constants;
    const double c3 = c * c * c;
    return std::sqrt(3.0 * pi * eps0 * hbar * c3 * gamma_sp_rest /
                     (omega0_rest * omega0_rest * omega0_rest));
}

double superradiance_time_rest(double lambda_rest, double inversion_density_rest,
                               double length_rest, double gamma_sp_rest) {
    require_positive(lambda_rest, "lambda_rest");
    require_positive(inversion_density_rest, "inversion_density_rest");
    require_positive(length_rest, "length_rest");
    require_positive(gamma_sp_rest, "gamma_sp_rest");
    return 8.0 * constants::pi /
           (3.0 * lambda_rest * lambda_rest * inversion_density_rest *
            length_rest * gamma_sp_rest);
}

double particle_number(double inversion_density_rest, double lambda_rest,
                       double length_rest) {
    if (inversion_density_rest < 0.0 || lambda_rest < 0.0 || length_rest < 0.0)
        throw std::domain_error("params: particle_number inputs must be >= 0");
    return inversion_density_rest * lambda_rest * length_rest * length_rest;
}

double tipping_angle(double particle_count) {
    require_positive(particle_count, "particle_count");
    return 2.0 / std::sqrt(particle_count);
}

double saturation_intensity(double dipole_rest, double t1, double t2) {
    require_positive(dipole_rest, "dipole_rest");
    require_positive(t1, "t1");
    require_positive(t2, "t2");
    using namespace constants;
    return c * eps0 * hbar * hbar / (8.0 * dipole_rest * dipole_rest * t1 * t2);
}

double gain_coefficient_rest(double t2_rest, double length_rest, double tr_rest) {
    require_positive(t2_rest, "t2_rest");
    require_positive(length_rest, "length_rest");
    require_positive(tr_rest, "tr_rest");
    return 2.0 * t2_rest / (length_rest * tr_rest);
}

bool superradiance_condition(double t2_rest, double tr_rest) {
    return t2_rest > tr_rest;
}

TransitionSpec TransitionSpec::from_line(double lambda_rest, double gamma_sp_rest) {
    require_positive(lambda_rest, "lambda_rest");
    require_positive(gamma_sp_rest, "gamma_sp_rest");
    TransitionSpec t;
    t.lambda_rest = lambda_rest;
    t.gamma_sp_rest = gamma_sp_rest;
    t.omega0_rest = 2.0 * constants::pi * constants::c / lambda_rest;
    t.dipole_rest = derive_dipole(gamma_sp_rest, t.omega0_rest);
    return t;
}

TransitionSpec oh1612() {
    return TransitionSpec::from_line(0.186, 1.282e-11);
}

SampleSpec SampleSpec::fresnel_one(const TransitionSpec& transition,
                                   double length_rest,
                                   double inversion_density_rest) {
    require_positive(length_rest, "length_rest");
    require_positive(inversion_density_rest, "inversion_density_rest");
    SampleSpec s;
    s.length_rest = length_rest;
    s.inversion_density_rest = inversion_density_rest;
    s.cross_section_rest = transition.lambda_rest * length_rest;
    s.particle_count =
        inversion_density_rest * s.cross_section_rest * length_rest;
    s.tipping_angle = rmb::tipping_angle(s.particle_count);
    return s;
}

TimescaleSpec TimescaleSpec::validated(double t1_rest, double t2_rest) {
    require_positive(t2_rest, "t2_rest");
    if (!(t1_rest >= t2_rest))
        throw std::domain_error("params: T1' must be >= T2'");
    return TimescaleSpec{t1_rest, t2_rest};
}

}  // namespace rmb
