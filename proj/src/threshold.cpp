#include "awi/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "awi/rootfind.hpp"

namespace awi {

namespace {

constexpr double kKappa0Lo = 1e-6;
constexpr double kKappa0Hi = 1e12;

BathConditions at_pressure(const BathConditions& tmpl, double pressure_torr) {
  BathConditions bath = tmpl;
  bath.pressure_torr = pressure_torr;
  return bath;
}

DegenerateModelPoint eval_point(const AtomSystem& atom, const BathConditions& bath,
                                double kappa0, double chi_raman) {
  const DriveField drive{rabi_from_kappa0(kappa0, atom.a21), 0.0};
  return eval_degenerate_model(atom, bath, drive, chi_raman);
}

// Bisection in log kappa0 for a sign change of `value`; empty when the
// endpoints do not bracket one.
std::optional<double> threshold_root(const AtomSystem& atom, const BathConditions& bath,
                                     double chi_raman,
                                     double (*value)(const DegenerateModelPoint&)) {
  const auto f = [&](double log_k0) {
    return value(eval_point(atom, bath, std::exp(log_k0), chi_raman));
  };
  const double lo = std::log(kKappa0Lo), hi = std::log(kKappa0Hi);
  const double f_lo = f(lo), f_hi = f(hi);
  if (f_lo <= 0.0 || f_hi >= 0.0) return std::nullopt;
  const double root = bisect(f, lo, hi, f_lo, f_hi, 1e-14, 120);
  return std::exp(root);
}

double inversion_value(const DegenerateModelPoint& pt) { return pt.pops.diff13(); }

double awi_value(const DegenerateModelPoint& pt) {
  return pt.pops.diff13() - pt.pops.diff12() * pt.s_param;
}

}  // namespace

std::optional<double> inversion_threshold(double pressure_torr, const AtomSystem& atom,
                                          const BathConditions& bath_template,
                                          double chi_raman) {
  if (pressure_torr < 0) throw ValidationError("inversion_threshold: pressure must be >= 0");
  return threshold_root(atom, at_pressure(bath_template, pressure_torr), chi_raman,
                        inversion_value);
}

std::optional<double> awi_threshold(double pressure_torr, const AtomSystem& atom,
                                    const BathConditions& bath_template, double chi_raman) {
  if (pressure_torr < 0) throw ValidationError("awi_threshold: pressure must be >= 0");
  return threshold_root(atom, at_pressure(bath_template, pressure_torr), chi_raman,
                        awi_value);
}

ThresholdCurve threshold_curve(ThresholdKind kind, const AtomSystem& atom,
                               const BathConditions& bath_template,
                               std::span<const double> pressures_torr, double chi_raman) {
  ThresholdCurve curve;
  curve.kind = kind;
  curve.species = atom.name;
  for (const double p : pressures_torr) {
    curve.pressures_torr.push_back(p);
    curve.kappa0.push_back(kind == ThresholdKind::inversion
                               ? inversion_threshold(p, atom, bath_template, chi_raman)
                               : awi_threshold(p, atom, bath_template, chi_raman));
  }
  return curve;
}

ThresholdMinimum minimize_threshold(ThresholdKind kind, const AtomSystem& atom,
                                    const BathConditions& bath_template, double p_lo_torr,
                                    double p_hi_torr, double chi_raman) {
  if (!(p_lo_torr > 0) || !(p_hi_torr > p_lo_torr)) {
    throw ValidationError("minimize_threshold: need 0 < p_lo < p_hi");
  }
  const auto eval = [&](double p) -> std::optional<double> {
    return kind == ThresholdKind::inversion
               ? inversion_threshold(p, atom, bath_template, chi_raman)
               : awi_threshold(p, atom, bath_template, chi_raman);
  };

  constexpr int n = 64;
  const double log_lo = std::log(p_lo_torr), log_hi = std::log(p_hi_torr);
  int best = -1;
  double best_val = std::numeric_limits<double>::infinity();
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) {
    grid[i] = std::exp(log_lo + (log_hi - log_lo) * i / (n - 1));
    const auto v = eval(grid[i]);
    if (v && *v < best_val) {
      best_val = *v;
      best = i;
    }
  }
  if (best < 0) {
    throw SearchError("minimize_threshold: threshold curve absent over the whole range");
  }

  const double lo = std::log(grid[std::max(0, best - 1)]);
  const double hi = std::log(grid[std::min(n - 1, best + 1)]);
  const auto objective = [&](double log_p) {
    const auto v = eval(std::exp(log_p));
    return v ? *v : std::numeric_limits<double>::infinity();
  };
  const double log_p_min = golden_min(objective, lo, hi, 1e-3, 80);

  ThresholdMinimum out;
  out.pressure_torr = std::exp(log_p_min);
  const auto v = eval(out.pressure_torr);
  out.kappa0_min = v ? *v : best_val;
  return out;
}

CriticalPoint critical_density(const AtomSystem& atom, const BathConditions& bath_template) {
  CriticalPoint cp;
  const double diff = atom.g2 * atom.sigma_23() - atom.g3 * atom.sigma_32();  // cm^2
  if (!(diff > 0)) return cp;
  const double vbar = mean_relative_speed_cm_s(atom.mass(), bath_template.buffer_mass(),
                                               bath_template.temperature_k);
  const double n_crit = atom.g3 * atom.a31 / (vbar * diff);  // cm^-3
  cp.density_cm3 = n_crit;
  cp.pressure_torr = n_crit * 1e6 * constants::k_boltzmann * bath_template.temperature_k /
                     constants::pascal_per_torr;
  return cp;
}

std::pair<double, double> peak_gain_at(const AtomSystem& atom,
                                       const BathConditions& bath_template,
                                       double pressure_torr, double kappa0,
                                       double chi_raman, int scan_points) {
  const BathConditions bath = at_pressure(bath_template, pressure_torr);
  const DegenerateModelPoint pt = eval_point(atom, bath, kappa0, chi_raman);
  const double w = 8.0 * std::max({pt.rates.gamma31, pt.rates.gamma32,
                                   std::abs(pt.drive.g)});

  const auto im_f = [&](double dp) {
    return pt.norm *
           susceptibility(dp, pt.drive, pt.rates, pt.pops.per_sublevel()).imag();
  };

  int best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  std::vector<double> grid(scan_points);
  for (int i = 0; i < scan_points; ++i) {
    grid[i] = -w + 2.0 * w * i / (scan_points - 1);
    const double v = im_f(grid[i]);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  const double lo = grid[std::max(0, best - 1)];
  const double hi = grid[std::min(scan_points - 1, best + 1)];
  const double dp_min = golden_min(im_f, lo, hi, 1e-10, 120);
  const double v_min = std::min(best_val, im_f(dp_min));
  return {-v_min, dp_min};
}

OperatingPoint optimize_gain(const AtomSystem& atom, const BathConditions& bath_template,
                             const GainSearchConfig& cfg) {
  if (!(cfg.p_lo_torr > 0) || !(cfg.p_hi_torr > cfg.p_lo_torr)) {
    throw ValidationError("optimize_gain: need 0 < p_lo < p_hi");
  }

  struct Inner {
    double gain = -std::numeric_limits<double>::infinity();
    double kappa0 = 0.0;
    double delta_p = 0.0;
  };

  // Best gain over kappa0 at one pressure, constrained to the region with a
  // positive per-sublevel difference (below the inversion threshold).
  const auto inner_best = [&](double p) -> Inner {
    Inner result;
    const auto awi_k0 = awi_threshold(p, atom, bath_template, cfg.chi_raman);
    if (!awi_k0) return result;  // resonant gain never turns on at this pressure
    const auto inv_k0 = inversion_threshold(p, atom, bath_template, cfg.chi_raman);
    const double k_lo = *awi_k0 * 1.02;
    const double k_hi = inv_k0 ? *inv_k0 * (1.0 - cfg.inversion_standoff) : cfg.kappa0_hi;
    if (!(k_hi > k_lo)) return result;

    const double log_lo = std::log(k_lo), log_hi = std::log(k_hi);
    int best = -1;
    double best_gain = 0.0, best_dp = 0.0;
    std::vector<double> ks(cfg.n_kappa0);
    for (int i = 0; i < cfg.n_kappa0; ++i) {
      ks[i] = std::exp(log_lo + (log_hi - log_lo) * i / (cfg.n_kappa0 - 1));
      const auto [gain, dp] =
          peak_gain_at(atom, bath_template, p, ks[i], cfg.chi_raman, cfg.scan_points);
      if (gain > best_gain) {
        best_gain = gain;
        best_dp = dp;
        best = i;
      }
    }
    if (best < 0) return result;

    const double rl = std::log(ks[std::max(0, best - 1)]);
    const double rh = std::log(ks[std::min(cfg.n_kappa0 - 1, best + 1)]);
    const auto neg_gain = [&](double log_k) {
      return -peak_gain_at(atom, bath_template, p, std::exp(log_k), cfg.chi_raman,
                           cfg.scan_points)
                  .first;
    };
    const double log_k_best = golden_min(neg_gain, rl, rh, 1e-4, 60);
    const double k_refined = std::min(std::exp(log_k_best), k_hi);
    const auto [gain, dp] =
        peak_gain_at(atom, bath_template, p, k_refined, cfg.chi_raman, cfg.scan_points);
    if (gain >= best_gain) {
      result = {gain, k_refined, dp};
    } else {
      result = {best_gain, ks[best], best_dp};
    }
    return result;
  };

  const double log_lo = std::log(cfg.p_lo_torr), log_hi = std::log(cfg.p_hi_torr);
  int best = -1;
  double best_gain = 0.0;
  std::vector<double> ps(cfg.n_pressure);
  std::vector<Inner> inner(cfg.n_pressure);
  for (int i = 0; i < cfg.n_pressure; ++i) {
    ps[i] = std::exp(log_lo + (log_hi - log_lo) * i / (cfg.n_pressure - 1));
    inner[i] = inner_best(ps[i]);
    if (inner[i].gain > best_gain) {
      best_gain = inner[i].gain;
      best = i;
    }
  }
  if (best < 0) throw SearchError("optimize_gain: no gain found in the search range");

  const double pl = std::log(ps[std::max(0, best - 1)]);
  const double ph = std::log(ps[std::min(cfg.n_pressure - 1, best + 1)]);
  const auto neg_outer = [&](double log_p) { return -inner_best(std::exp(log_p)).gain; };
  const double log_p_best = golden_min(neg_outer, pl, ph, 1e-3, 40);

  double p_star = std::exp(log_p_best);
  Inner star = inner_best(p_star);
  if (star.gain < best_gain) {
    p_star = ps[best];
    star = inner[best];
  }

  const BathConditions bath = at_pressure(bath_template, p_star);
  const DegenerateModelPoint pt = eval_point(atom, bath, star.kappa0, cfg.chi_raman);

  OperatingPoint op;
  op.pressure_torr = p_star;
  op.kappa0 = star.kappa0;
  op.g = pt.drive.g;
  op.peak_gain = star.gain;
  op.pop_diff_13 = pt.pops.diff13();
  op.delta_p_at_peak = star.delta_p;
  return op;
}

}  // namespace awi
