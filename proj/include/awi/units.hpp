#pragma once

#include "awi/constants.hpp"
#include "awi/errors.hpp"

namespace awi::units {

// E = h c w for a wavenumber w given in cm^-1; returns joules.
inline double energy_from_wavenumber(double wavenumber_cm) {
  if (wavenumber_cm < 0.0) {
    throw ValidationError("energy_from_wavenumber: wavenumber must be >= 0");
  }
  return constants::planck * constants::speed_of_light * (wavenumber_cm * 100.0);
}

inline double pressure_to_pascal(double pressure_torr) {
  if (pressure_torr < 0.0) {
    throw ValidationError("pressure_to_pascal: pressure must be >= 0");
  }
  return pressure_torr * constants::pascal_per_torr;
}

}  // namespace awi::units
