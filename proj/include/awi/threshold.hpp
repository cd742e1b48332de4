#pragma once

#include <optional>
#include <string>
#include <vector>

#include "awi/steady_state.hpp"

namespace awi {

enum class ThresholdKind { inversion, awi };

struct ThresholdCurve {
  std::vector<double> pressures_torr;
  std::vector<std::optional<double>> kappa0;  // empty where no root exists
  ThresholdKind kind = ThresholdKind::awi;
  std::string species;
};

struct ThresholdMinimum {
  double kappa0_min = 0.0;
  double pressure_torr = 0.0;
};

struct CriticalPoint {
  std::optional<double> density_cm3;    // empty when g2 s23 <= g3 s32
  std::optional<double> pressure_torr;  // at the bath temperature
};

struct OperatingPoint {
  double pressure_torr = 0.0;
  double kappa0 = 0.0;
  double g = 0.0;            // rad/s
  double peak_gain = 0.0;    // -min Im f of the normalized spectrum
  double pop_diff_13 = 0.0;  // residual R1/g1 - R3/g3
  double delta_p_at_peak = 0.0;
};

struct GainSearchConfig {
  double p_lo_torr = 1.0;
  double p_hi_torr = 4000.0;
  int n_pressure = 40;
  double kappa0_hi = 1e7;        // cap when no inversion threshold exists
  int n_kappa0 = 32;
  double inversion_standoff = 0.01;  // stay (1-h) below the inversion threshold
  int scan_points = 501;
  double chi_raman = 0.0;
};

// Threshold kappa0 at which R1/g1 - R3/g3 crosses zero (atoms at v = 0,
// delta = delta_p = 0).  Empty below the critical density.
std::optional<double> inversion_threshold(double pressure_torr, const AtomSystem& atom,
                                          const BathConditions& bath_template,
                                          double chi_raman = 0.0);

// Threshold kappa0 at which resonant Im f changes sign.
std::optional<double> awi_threshold(double pressure_torr, const AtomSystem& atom,
                                    const BathConditions& bath_template,
                                    double chi_raman = 0.0);

ThresholdCurve threshold_curve(ThresholdKind kind, const AtomSystem& atom,
                               const BathConditions& bath_template,
                               std::span<const double> pressures_torr,
                               double chi_raman = 0.0);

// Log-grid scan (64 points) plus golden-section refinement to 1e-3 relative.
// Throws SearchError when the curve is absent across the whole range.
ThresholdMinimum minimize_threshold(ThresholdKind kind, const AtomSystem& atom,
                                    const BathConditions& bath_template,
                                    double p_lo_torr, double p_hi_torr,
                                    double chi_raman = 0.0);

// Critical density from the balance N vbar (g2 s23 - g3 s32) = g3 A31.
CriticalPoint critical_density(const AtomSystem& atom, const BathConditions& bath_template);

// Nested search over (pressure, kappa0) maximizing the peak gain
// -min_dp Im f at delta = 0, constrained to a positive per-sublevel
// population difference.  Throws SearchError when no gain exists in range.
OperatingPoint optimize_gain(const AtomSystem& atom, const BathConditions& bath_template,
                             const GainSearchConfig& cfg = {});

// Peak gain of the normalized spectrum at one (pressure, kappa0) point:
// returns {gain, delta_p at the minimum}; gain < 0 means pure absorption.
std::pair<double, double> peak_gain_at(const AtomSystem& atom,
                                       const BathConditions& bath_template,
                                       double pressure_torr, double kappa0,
                                       double chi_raman = 0.0, int scan_points = 501);

}  // namespace awi
