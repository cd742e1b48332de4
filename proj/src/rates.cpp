#include "awi/rates.hpp"

#include <cmath>

#include "awi/units.hpp"

namespace awi {

using constants::k_boltzmann;
using constants::pi;

void RateSet::validate() const {
  if (gamma2 < 0 || gamma3 < 0 || w23 < 0 || w32 < 0 || a21 < 0 || a31 < 0) {
    throw ValidationError("rate set: all rates must be >= 0");
  }
  if (!(gamma21 > 0) || !(gamma31 > 0) || !(gamma32 > 0)) {
    throw ValidationError("rate set: coherence widths must be > 0");
  }
}

double number_density_cm3(const BathConditions& bath) {
  bath.validate();
  const double n_m3 = units::pressure_to_pascal(bath.pressure_torr) /
                      (k_boltzmann * bath.temperature_k);
  return n_m3 * 1e-6;
}

double mean_relative_speed_cm_s(double mass_a_kg, double mass_b_kg, double temperature_k) {
  if (!(mass_a_kg > 0) || !(mass_b_kg > 0) || !(temperature_k > 0)) {
    throw ValidationError("mean_relative_speed: masses and temperature must be positive");
  }
  const double mu = mass_a_kg * mass_b_kg / (mass_a_kg + mass_b_kg);
  const double v_m_s = std::sqrt(8.0 * k_boltzmann * temperature_k / (pi * mu));
  return v_m_s * 100.0;
}

TransferRates transfer_rates(double density_cm3, double vbar_cm_s, const AtomSystem& atom) {
  if (density_cm3 < 0 || vbar_cm_s < 0) {
    throw ValidationError("transfer_rates: density and speed must be >= 0");
  }
  return {density_cm3 * vbar_cm_s * atom.sigma_23(),
          density_cm3 * vbar_cm_s * atom.sigma_32()};
}

RateSet build_rate_set(const AtomSystem& atom, const BathConditions& bath, double chi_raman) {
  atom.validate();
  bath.validate();
  if (chi_raman < 0) throw ValidationError("build_rate_set: chi_raman must be >= 0");

  const double n = number_density_cm3(bath);
  const double vbar = mean_relative_speed_cm_s(atom.mass(), bath.buffer_mass(),
                                               bath.temperature_k);
  const TransferRates w = transfer_rates(n, vbar, atom);

  RateSet r;
  r.a21 = atom.a21;
  r.a31 = atom.a31;
  r.w23 = w.w23;
  r.w32 = w.w32;
  r.gamma2 = atom.a21 + w.w23;
  r.gamma3 = atom.a31 + w.w32;
  r.gamma21 = 0.5 * r.gamma2 + n * vbar * atom.sigma_b21();
  r.gamma31 = 0.5 * r.gamma3 + n * vbar * atom.sigma_b31();
  r.gamma32 = 0.5 * (r.gamma2 + r.gamma3) +
              chi_raman * n * vbar * 0.5 * (atom.sigma_b21() + atom.sigma_b31());
  return r;
}

double saturation_kappa(const DriveField& drive, const RateSet& rates) {
  rates.validate();
  const double g2 = drive.g * drive.g;
  return 2.0 * rates.gamma21 * g2 /
         (rates.gamma2 * (rates.gamma21 * rates.gamma21 + drive.delta * drive.delta));
}

double kappa_prime(double kappa, const RateSet& rates) {
  if (kappa < 0) throw ValidationError("kappa_prime: kappa must be >= 0");
  const double denom = 1.0 - rates.w32 * rates.w23 / (rates.gamma3 * rates.gamma2);
  if (!(denom > 0)) {
    throw DomainError("kappa_prime: 1 - w32 w23 / (Gamma3 Gamma2) must be positive");
  }
  return kappa * (2.0 + rates.w23 / rates.gamma3) / denom;
}

double kappa0_collisionless(double g, double a21) {
  if (!(a21 > 0)) throw ValidationError("kappa0_collisionless: A21 must be positive");
  return 4.0 * g * g / (a21 * a21);
}

double rabi_from_kappa0(double kappa0, double a21) {
  if (kappa0 < 0) throw ValidationError("rabi_from_kappa0: kappa0 must be >= 0");
  if (!(a21 > 0)) throw ValidationError("rabi_from_kappa0: A21 must be positive");
  return 0.5 * a21 * std::sqrt(kappa0);
}

double saturation_intensity_w_cm2(const AtomSystem& atom) {
  const double lambda = atom.lambda_drive();
  const double i_sat_w_m2 = pi * constants::planck * constants::speed_of_light * atom.a21 /
                            (3.0 * lambda * lambda * lambda);
  return i_sat_w_m2 * 1e-4;
}

double rabi_from_intensity(double intensity_w_cm2, const AtomSystem& atom) {
  if (intensity_w_cm2 < 0) {
    throw ValidationError("rabi_from_intensity: intensity must be >= 0");
  }
  const double i_sat = saturation_intensity_w_cm2(atom);
  return 0.5 * atom.a21 * std::sqrt(intensity_w_cm2 / (2.0 * i_sat));
}

DetailedBalance detailed_balance_diagnostic(const AtomSystem& atom, double temperature_k) {
  DetailedBalance d;
  d.rate_ratio = atom.sigma_32() / atom.sigma_23();
  d.boltzmann_ratio = (static_cast<double>(atom.g2) / atom.g3) *
                      std::exp(-atom.boltzmann_x(temperature_k));
  return d;
}

}  // namespace awi
