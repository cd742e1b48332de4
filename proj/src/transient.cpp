#include "awi/transient.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>

namespace awi {

namespace {

DensityState operator*(double a, const DensityState& s) {
  return {a * s.r31, a * s.r32, a * s.r21, a * s.r2, a * s.r3};
}

DensityState operator+(const DensityState& a, const DensityState& b) {
  return {a.r31 + b.r31, a.r32 + b.r32, a.r21 + b.r21, a.r2 + b.r2, a.r3 + b.r3};
}

// Natural magnitudes of the state components: populations live on the unit
// simplex, each coherence scales with the field that drives it.
struct StateScales {
  double c31, c32, c21, pop;
};

StateScales natural_scales(double g_p, const DriveField& drive, const RateSet& r) {
  return {1e-3 * g_p / r.gamma31, 1e-3 * g_p / r.gamma32,
          1e-3 * drive.g / r.gamma21, 1e-3};
}

// Largest component change relative to max(component, its natural scale).
double relative_change(const DensityState& a, const DensityState& b,
                       const StateScales& s) {
  const auto rel = [](double diff, double x, double y, double floor) {
    const double denom = std::max({x, y, floor});
    return denom > 0.0 ? diff / denom : 0.0;
  };
  return std::max(
      {rel(std::abs(a.r31 - b.r31), std::abs(a.r31), std::abs(b.r31), s.c31),
       rel(std::abs(a.r32 - b.r32), std::abs(a.r32), std::abs(b.r32), s.c32),
       rel(std::abs(a.r21 - b.r21), std::abs(a.r21), std::abs(b.r21), s.c21),
       rel(std::abs(a.r2 - b.r2), std::abs(a.r2), std::abs(b.r2), s.pop),
       rel(std::abs(a.r3 - b.r3), std::abs(a.r3), std::abs(b.r3), s.pop)});
}

double min_positive_rate(const RateSet& r) {
  double m = r.gamma21;
  for (const double v : {r.gamma2, r.gamma3, r.gamma31, r.gamma32}) {
    if (v > 0.0) m = std::min(m, v);
  }
  return m;
}

double max_rate(const RateSet& r, const DriveField& d, double g_p, double delta_p) {
  return std::max({r.gamma2, r.gamma3, r.gamma21, r.gamma31, r.gamma32,
                   std::abs(d.delta), std::abs(delta_p), std::abs(d.g), std::abs(g_p)});
}

}  // namespace

DensityState density_rhs(const DensityState& y, double g_p, const DriveField& drive,
                         double delta_p, const RateSet& rates) {
  const std::complex<double> i(0.0, 1.0);
  const double g = drive.g;  // real Rabi frequencies: Im(g* r) = g Im(r)
  const double r1 = y.r1();

  DensityState d;
  d.r31 = i * g_p * (r1 - y.r3) -
          std::complex<double>(rates.gamma31, -delta_p) * y.r31 - i * g * y.r32;
  d.r32 = i * g_p * std::conj(y.r21) - i * g * y.r31 -
          std::complex<double>(rates.gamma32, -(delta_p - drive.delta)) * y.r32;
  d.r21 = i * g * (r1 - y.r2) -
          std::complex<double>(rates.gamma21, -drive.delta) * y.r21 -
          i * g_p * std::conj(y.r32);
  d.r3 = 2.0 * g_p * y.r31.imag() - rates.gamma3 * y.r3 + rates.w23 * y.r2;
  d.r2 = 2.0 * g * y.r21.imag() - rates.gamma2 * y.r2 + rates.w32 * y.r3;
  return d;
}

double density_rhs_r1(const DensityState& y, double g_p, const DriveField& drive,
                      const RateSet& rates) {
  return -2.0 * g_p * y.r31.imag() - 2.0 * drive.g * y.r21.imag() +
         rates.a21 * y.r2 + rates.a31 * y.r3;
}

namespace {

// Dormand-Prince 5(4) tableau (autonomous system, no time nodes needed).
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

constexpr double kAtol = 1e-21;  // absolute step-error floor per component

}  // namespace

IntegrateReport integrate_to_steady(const DensityState& initial, double g_p,
                                    const DriveField& drive, double delta_p,
                                    const RateSet& rates, const IntegrateOptions& opts) {
  rates.validate();
  if (!(opts.tol > 1e-14) || !(opts.tol < 1e-3)) {
    throw ValidationError("integrate_to_steady: tol must lie in (1e-14, 1e-3)");
  }

  const auto rhs = [&](const DensityState& y) {
    return density_rhs(y, g_p, drive, delta_p, rates);
  };

  const double t_char = 1.0 / min_positive_rate(rates);
  const double horizon = opts.horizon_factor / std::min(rates.a21, rates.a31);
  const double fast = max_rate(rates, drive, g_p, delta_p);
  const StateScales scales = natural_scales(g_p, drive, rates);

  IntegrateReport rep;
  rep.state = initial;
  DensityState y = initial;
  DensityState k1 = rhs(y);
  double t = 0.0;
  double dt = 0.01 / fast;
  DensityState snapshot = y;
  double next_check = t_char;

  const auto note_state = [&](const DensityState& s) {
    rep.max_population_excursion =
        std::max({rep.max_population_excursion, -s.r2, -s.r3, -s.r1(), s.r2 - 1.0,
                  s.r3 - 1.0, s.r1() - 1.0});
    const double v31 = std::norm(s.r31) - s.r1() * s.r3;
    const double v21 = std::norm(s.r21) - s.r1() * s.r2;
    const double v32 = std::norm(s.r32) - s.r3 * s.r2;
    rep.max_coherence_violation = std::max({rep.max_coherence_violation, v31, v21, v32});
  };

  while (rep.steps < opts.max_steps) {
    if (t + dt > horizon) dt = horizon - t;

    const DensityState k2 = rhs(y + dt * (a21 * k1));
    const DensityState k3 = rhs(y + dt * (a31 * k1 + a32 * k2));
    const DensityState k4 = rhs(y + dt * (a41 * k1 + a42 * k2 + a43 * k3));
    const DensityState k5 = rhs(y + dt * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const DensityState k6 =
        rhs(y + dt * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const DensityState y5 =
        y + dt * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const DensityState k7 = rhs(y5);
    const DensityState err =
        dt * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    // Per-component control: relative against each component's size with a
    // deep absolute floor, so probe-order (~1e-6) components stay clean.
    const auto comp = [&](double e_abs, double a, double b) {
      return e_abs / (kAtol + opts.step_rel_tol * std::max(a, b));
    };
    const double errnorm =
        std::max({comp(std::abs(err.r31), std::abs(y.r31), std::abs(y5.r31)),
                  comp(std::abs(err.r32), std::abs(y.r32), std::abs(y5.r32)),
                  comp(std::abs(err.r21), std::abs(y.r21), std::abs(y5.r21)),
                  comp(std::abs(err.r2), std::abs(y.r2), std::abs(y5.r2)),
                  comp(std::abs(err.r3), std::abs(y.r3), std::abs(y5.r3))});

    if (errnorm <= 1.0) {
      t += dt;
      y = y5;
      k1 = k7;  // FSAL
      ++rep.steps;
      note_state(y);

      if (t >= next_check) {
        rep.last_change = relative_change(y, snapshot, scales);
        if (rep.last_change < opts.tol) {
          rep.state = y;
          rep.t_final = t;
          return rep;
        }
        snapshot = y;
        next_check = t + t_char;
      }
      if (t >= horizon) break;
    }
    const double grow = errnorm > 0.0 ? 0.9 * std::pow(errnorm, -0.2) : 5.0;
    dt *= std::clamp(grow, 0.2, 5.0);
  }

  char detail[64];
  std::snprintf(detail, sizeof(detail), "%.3e", rep.last_change);
  throw ConvergenceError(
      "integrate_to_steady: no steady state within the horizon (last change " +
      std::string(detail) + ")");
}

std::complex<double> linear_response_f(double delta_p, const DriveField& drive,
                                       const RateSet& rates, const IntegrateOptions& opts,
                                       double eps) {
  const double g_p = eps * rates.gamma31;
  const IntegrateReport rep = integrate_to_steady(DensityState{}, g_p, drive, delta_p,
                                                  rates, opts);
  return rates.gamma31 * rep.state.r31 / g_p;
}

}  // namespace awi
