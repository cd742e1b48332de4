#pragma once

// Physical constants, CODATA 2018, SI units.
namespace awi::constants {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double k_boltzmann = 1.380649e-23;           // J/K
inline constexpr double planck = 6.62607015e-34;              // J s
inline constexpr double hbar = planck / (2.0 * pi);           // J s
inline constexpr double speed_of_light = 2.99792458e8;        // m/s
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg

// 1 Torr = 1/760 atm.
inline constexpr double pascal_per_torr = 101325.0 / 760.0;

// 1 A^2 = 1e-16 cm^2 (cross sections are carried in cm^2).
inline constexpr double cm2_per_angstrom2 = 1e-16;

}  // namespace awi::constants
