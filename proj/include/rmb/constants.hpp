// constants.hpp - fixed physical constants (CODATA 2018), SI units

#pragma once

namespace rmb::constants {

inline constexpr double c = 299792458.0;           // speed of light (m/s)
inline constexpr double eps0 = 8.8541878128e-12;   // vacuum permittivity (F/m)
inline constexpr double hbar = 1.054571817e-34;    // reduced Planck constant (J s)
inline constexpr double pi = 3.14159265358979323846;

}  // namespace rmb::constants
