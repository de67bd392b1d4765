#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "rmb/params.hpp"
#include "rmb/relativity.hpp"

using namespace rmb;

namespace {
const double kOmega0 = 1.0127158964026093e10;  // 2 pi c / 0.186 m
}

TEST_CASE("derive_dipole") {
    // frozen against an independent arbitrary-precision evaluation
    CHECK(derive_dipole(1.282e-11, kOmega0) ==
          doctest::Approx(1.710770037641098e-30).epsilon(1e-10));
    // sqrt homogeneity in Gamma'
    CHECK(derive_dipole(4.0 * 1.282e-11, kOmega0) ==
          doctest::Approx(2.0 * derive_dipole(1.282e-11, kOmega0)).epsilon(1e-12));
    CHECK_THROWS_AS(derive_dipole(0.0, kOmega0), std::domain_error);
}

TEST_CASE("superradiance_time_rest") {
    const double tr = superradiance_time_rest(0.186, 2e4, 4.2e13, 1.282e-11);
    CHECK(tr == doctest::Approx(2.248668339868353e-5).epsilon(1e-10));
    CHECK(tr == doctest::Approx(22e-6).epsilon(0.05));  // quoted ~22 us
    CHECK(superradiance_time_rest(0.186, 4e4, 4.2e13, 1.282e-11) ==
          doctest::Approx(tr / 2.0).epsilon(1e-12));
    CHECK(superradiance_time_rest(0.186, 1.2e4, 4.2e13, 1.282e-11) ==
          doctest::Approx(3.747780566447255e-5).epsilon(1e-10));
    SUBCASE("exact homogeneity in each argument") {
        CHECK(superradiance_time_rest(0.186, 2e4, 2 * 4.2e13, 1.282e-11) ==
              doctest::Approx(tr / 2.0).epsilon(1e-12));
        CHECK(superradiance_time_rest(0.186, 2e4, 4.2e13, 2 * 1.282e-11) ==
              doctest::Approx(tr / 2.0).epsilon(1e-12));
        CHECK(superradiance_time_rest(2 * 0.186, 2e4, 4.2e13, 1.282e-11) ==
              doctest::Approx(tr / 4.0).epsilon(1e-12));
    }
}

TEST_CASE("particle_number and tipping_angle") {
    const double n = particle_number(2e4, 0.186, 4.2e13);
    CHECK(n == doctest::Approx(6.56208e30).epsilon(1e-12));
    CHECK(n == doctest::Approx(7e30).epsilon(0.10));  // quoted N ~ 7e30
    CHECK(particle_number(0.0, 0.186, 4.2e13) == 0.0);
    const double theta = tipping_angle(n);
    CHECK(theta == doctest::Approx(7.80745042599944e-16).epsilon(1e-12));
    // N theta0^2 = 4 exactly
    CHECK(n * theta * theta == doctest::Approx(4.0).epsilon(1e-12));
    CHECK_THROWS_AS(tipping_angle(0.0), std::domain_error);
}

TEST_CASE("saturation_intensity") {
    const double d = derive_dipole(1.282e-11, kOmega0);
    const double isat = saturation_intensity(d, 0.1, 1.2e-3);
    CHECK(isat == doctest::Approx(1.050672222300929e-8).epsilon(1e-10));
    CHECK(saturation_intensity(d, 0.2, 2.4e-3) ==
          doctest::Approx(isat / 4.0).epsilon(1e-12));
    SUBCASE("I/I_sat ratio is frame-invariant") {
        for (double b : {-0.5, 0.5, 0.9}) {
            const double t1 = relativity::timescale_to_observer(0.1, b);
            const double t2 = relativity::timescale_to_observer(1.2e-3, b);
            const double isat_obs = saturation_intensity(d, t1, t2);
            const double i_rest = 3.7e-7;
            const double i_obs = i_rest * relativity::intensity_boost(b);
            CHECK(i_obs / isat_obs ==
                  doctest::Approx(i_rest / isat).epsilon(1e-12));
        }
    }
}

TEST_CASE("gain_coefficient_rest") {
    const double tr = 2.248668339868353e-5;
    const double alpha = gain_coefficient_rest(1.2e-3, 4.2e13, tr);
    CHECK(alpha * 4.2e13 == doctest::Approx(106.7298346069348).epsilon(1e-10));
    CHECK(gain_coefficient_rest(0.5, 1.0, 1.0) == doctest::Approx(1.0));
    // alpha' L' T_R' = 2 T2' exactly
    CHECK(alpha * 4.2e13 * tr == doctest::Approx(2 * 1.2e-3).epsilon(1e-12));
    // observer-frame gain alpha = gamma alpha'
    CHECK(relativity::lorentz_gamma(0.5) ==
          doctest::Approx(1.1547005383792517).epsilon(1e-12));
}

TEST_CASE("superradiance_condition") {
    CHECK(superradiance_condition(1.2e-3, 2.25e-5));
    CHECK_FALSE(superradiance_condition(1e-6, 2.25e-5));
}

TEST_CASE("TransitionSpec::from_line and oh1612") {
    const TransitionSpec t = oh1612();
    CHECK(t.lambda_rest == 0.186);
    CHECK(t.gamma_sp_rest == 1.282e-11);
    CHECK(t.omega0_rest == doctest::Approx(kOmega0).epsilon(1e-12));
    CHECK(t.omega0_rest ==
          doctest::Approx(2 * 3.14159265358979 * 1.612e9).epsilon(1e-3));
    CHECK(t.dipole_rest == doctest::Approx(1.710770037641098e-30).epsilon(1e-10));
    CHECK_THROWS_AS(TransitionSpec::from_line(-1.0, 1e-11), std::domain_error);
}

TEST_CASE("SampleSpec::fresnel_one") {
    const SampleSpec s = SampleSpec::fresnel_one(oh1612(), 4.2e13, 2e4);
    CHECK(s.cross_section_rest == doctest::Approx(0.186 * 4.2e13).epsilon(1e-12));
    CHECK(s.particle_count == doctest::Approx(6.56208e30).epsilon(1e-12));
    CHECK(s.tipping_angle == doctest::Approx(7.80745042599944e-16).epsilon(1e-12));
}

TEST_CASE("TimescaleSpec::validated") {
    const TimescaleSpec t = TimescaleSpec::validated(0.1, 1.2e-3);
    CHECK(t.t1_rest == 0.1);
    CHECK(t.t2_rest == 1.2e-3);
    CHECK_THROWS_AS(TimescaleSpec::validated(1e-3, 0.1), std::domain_error);
    CHECK_THROWS_AS(TimescaleSpec::validated(0.1, 0.0), std::domain_error);
}
