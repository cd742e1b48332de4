#pragma once

#include "awi/species.hpp"

namespace awi {

// Strong coupling field on the D2 transition.  g is the Rabi frequency
// modulus mu_21 E0 / 2 hbar, delta = omega - omega_21; both rad/s.
struct DriveField {
  double g = 0.0;
  double delta = 0.0;
};

// All relaxation rates of the three-level system, s^-1.
// Invariants: gamma2 = a21 + w23 and gamma3 = a31 + w32 hold exactly.
struct RateSet {
  double gamma2 = 0.0;   // population decay of |2>
  double gamma3 = 0.0;   // population decay of |3>
  double gamma21 = 0.0;  // coherence decay, drive transition
  double gamma31 = 0.0;  // coherence decay, probe transition
  double gamma32 = 0.0;  // coherence decay, Raman transition
  double w23 = 0.0;      // collisional transfer |2> -> |3>
  double w32 = 0.0;      // collisional transfer |3> -> |2>
  double a21 = 0.0;
  double a31 = 0.0;

  void validate() const;
};

// Ideal-gas number density, cm^-3.
double number_density_cm3(const BathConditions& bath);

// Maxwell mean relative speed sqrt(8 kB T / pi mu), cm/s.
double mean_relative_speed_cm_s(double mass_a_kg, double mass_b_kg, double temperature_k);

// (w23, w32) = N vbar (sigma_23, sigma_32).
struct TransferRates {
  double w23 = 0.0;
  double w32 = 0.0;
};
TransferRates transfer_rates(double density_cm3, double vbar_cm_s, const AtomSystem& atom);

// Full rate set for an atom in a buffer gas.  Coherence widths are half the
// population widths plus collisional broadening N vbar sigma_b; the Raman
// width carries an optional extra dephasing chi_raman * N vbar
// (sigma_b21 + sigma_b31)/2 on top of (gamma2 + gamma3)/2.
RateSet build_rate_set(const AtomSystem& atom, const BathConditions& bath,
                       double chi_raman = 0.0);

// kappa = 2 Gamma21 |g|^2 / (Gamma2 (Gamma21^2 + delta^2)).
double saturation_kappa(const DriveField& drive, const RateSet& rates);

// kappa' = kappa (2 + w23/Gamma3) / (1 - w32 w23 / (Gamma3 Gamma2)).
double kappa_prime(double kappa, const RateSet& rates);

// Collisionless resonant saturation parameter kappa0 = 4 |g|^2 / A21^2.
double kappa0_collisionless(double g, double a21);
// Inverse: |g| for a given kappa0.
double rabi_from_kappa0(double kappa0, double a21);

// Two-level saturation intensity pi h c A21 / (3 lambda_drive^3), W/cm^2.
double saturation_intensity_w_cm2(const AtomSystem& atom);
// |g| = (A21/2) sqrt(I / (2 I_sat)) for an intensity in W/cm^2.
double rabi_from_intensity(double intensity_w_cm2, const AtomSystem& atom);

// Reported, not enforced: w32/w23 against (g2/g3) exp(-delta_E/kB T).
struct DetailedBalance {
  double rate_ratio = 0.0;       // w32 / w23 (= sigma_32/sigma_23)
  double boltzmann_ratio = 0.0;  // (g2/g3) exp(-x)
};
DetailedBalance detailed_balance_diagnostic(const AtomSystem& atom, double temperature_k);

}  // namespace awi
