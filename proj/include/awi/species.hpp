#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "awi/constants.hpp"
#include "awi/errors.hpp"

namespace awi {

// Three-level V scheme: |1> = S1/2 (ground), |2> = P3/2 (drive, D2),
// |3> = P1/2 (probe, D1).  Values are stored in the catalog-file units
// (nm, s^-1, cm^-1, amu, A^2); accessors convert.
struct AtomSystem {
  std::string name;
  double lambda_probe_nm = 0.0;  // D1 wavelength
  double lambda_drive_nm = 0.0;  // D2 wavelength
  double a21 = 0.0;              // s^-1, P3/2 -> S spontaneous decay
  double a31 = 0.0;              // s^-1, P1/2 -> S spontaneous decay
  double delta_e_wavenumber = 0.0;  // cm^-1, fine splitting E2 - E3
  double mass_amu = 0.0;
  int g1 = 2;
  int g2 = 4;
  int g3 = 2;
  double sigma_23_A2 = 0.0;   // P3/2 -> P1/2 transfer
  double sigma_32_A2 = 0.0;   // P1/2 -> P3/2 transfer
  double sigma_b21_A2 = 0.0;  // D2 collision broadening
  double sigma_b31_A2 = 0.0;  // D1 collision broadening

  double lambda_probe() const { return lambda_probe_nm * 1e-9; }  // m
  double lambda_drive() const { return lambda_drive_nm * 1e-9; }  // m
  double delta_e() const;                                         // J
  double mass() const { return mass_amu * constants::atomic_mass_unit; }  // kg
  double sigma_23() const { return sigma_23_A2 * constants::cm2_per_angstrom2; }    // cm^2
  double sigma_32() const { return sigma_32_A2 * constants::cm2_per_angstrom2; }    // cm^2
  double sigma_b21() const { return sigma_b21_A2 * constants::cm2_per_angstrom2; }  // cm^2
  double sigma_b31() const { return sigma_b31_A2 * constants::cm2_per_angstrom2; }  // cm^2

  // delta_E / (kB T), the Boltzmann exponent of the fine splitting.
  double boltzmann_x(double temperature_k) const;

  // Throws ValidationError naming the offending field.
  void validate() const;
};

struct BathConditions {
  std::string buffer;
  double buffer_mass_amu = 0.0;
  double pressure_torr = 0.0;
  double temperature_k = 0.0;

  double buffer_mass() const { return buffer_mass_amu * constants::atomic_mass_unit; }
  void validate() const;
};

// Immutable after load; safe for concurrent reads.
class SpeciesCatalog {
 public:
  // Parses the line-oriented key-value format ([species X] / [buffer Y]
  // sections).  Throws ParseError with a line number, ValidationError on
  // invariant violations, Error if the file is missing.
  static SpeciesCatalog load(const std::string& path);
  static SpeciesCatalog parse(const std::string& text);

  // The catalog compiled into the library (identical to data/species.cfg).
  static const SpeciesCatalog& builtin();
  static const char* builtin_text();

  const AtomSystem& atom(std::string_view name) const;
  double buffer_mass_amu(std::string_view name) const;
  bool has_atom(std::string_view name) const;

  std::vector<std::string> species_names() const;
  std::vector<std::string> buffer_names() const;

  BathConditions make_bath(std::string_view buffer, double pressure_torr,
                           double temperature_k) const;

  // Canonical decimal-text form; serialize/parse round-trips bit-exactly.
  std::string serialize() const;
  void save(const std::string& path) const;

 private:
  std::map<std::string, AtomSystem> atoms_;
  std::map<std::string, double> buffer_masses_amu_;
};

}  // namespace awi
