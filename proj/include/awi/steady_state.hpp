#pragma once

#include <complex>
#include <span>
#include <vector>

#include "awi/quadrature.hpp"
#include "awi/rates.hpp"

namespace awi {

// Level populations, r1 + r2 + r3 = 1.  In degenerate use these hold the
// per-sublevel values r_iM = R_i / g_i.
struct PopulationState {
  double r1 = 1.0;
  double r2 = 0.0;
  double r3 = 0.0;

  double diff12() const { return r1 - r2; }
  double diff13() const { return r1 - r3; }
  double sum() const { return r1 + r2 + r3; }
};

// Whole-level populations of the degenerate model, sum(R) = 1.
struct DegeneratePopulations {
  double R1 = 1.0;
  double R2 = 0.0;
  double R3 = 0.0;
  int g1 = 2;
  int g2 = 4;
  int g3 = 2;

  double sum() const { return R1 + R2 + R3; }
  // Per-sublevel populations, the quantities the susceptibility sees.
  PopulationState per_sublevel() const {
    return {R1 / g1, R2 / g2, R3 / g3};
  }
  double diff12() const { return R1 / g1 - R2 / g2; }
  double diff13() const { return R1 / g1 - R3 / g3; }
};

struct SpectrumSample {
  double delta_p = 0.0;          // rad/s
  std::complex<double> f;        // normalized susceptibility
  double absorption() const { return f.imag(); }
  double dispersion() const { return f.real(); }
};

// Steady state of the non-degenerate system under the drive alone:
// r2 = Gamma3/(2 Gamma3 + w23) * kprime/(1+kprime), r3 = (w23/Gamma3) r2.
PopulationState populations_nondegenerate(double kprime, const RateSet& rates);

// High-pressure limit (w23 - w32 >> A21, A31; w32 = w23 exp(-x)).
struct HighPressureResult {
  double r1_minus_r3 = 0.0;
  double kprime = 0.0;
};
HighPressureResult populations_high_pressure(const DriveField& drive, double gamma21,
                                             double a21, double x);

// kappa' of the degenerate model, from matching the 3x3 solve to the closed
// forms; reduces to the non-degenerate kappa' at g1 = g2 = g3 = 1.
double kappa_prime_degenerate(double kappa, const RateSet& rates, int g1, int g2, int g3);

// Direct 3x3 linear solve of the degenerate population balance.
DegeneratePopulations populations_degenerate(double kappa, const RateSet& rates,
                                             int g1, int g2, int g3);
// Closed-form solution, used as a cross-check of the solve.
DegeneratePopulations populations_degenerate_closed(double kappa, const RateSet& rates,
                                                    int g1, int g2, int g3);

// Normalized probe susceptibility f(delta_p); absorption = Im f,
// dispersion = Re f.  Pass per-sublevel populations in the degenerate case.
std::complex<double> susceptibility(double delta_p, const DriveField& drive,
                                    const RateSet& rates, const PopulationState& pops);

// Resonant value ((r1-r3) - (r1-r2) S) / (1 + S), S = |g|^2/(Gamma21 Gamma32).
double resonant_f(double s_param, const PopulationState& pops);

// True iff (r1-r2) S > (r1-r3); population differences within 1e-10 of zero
// are treated as zero.
bool awi_predicate(double s_param, const PopulationState& pops);

double s_parameter(const DriveField& drive, const RateSet& rates);

struct SumRuleConfig {
  double half_range_factor = 50.0;  // times max(Gamma31, Gamma32, |g|, |delta|)
  double rel_tol = 1e-9;            // quadrature tolerance
  int max_depth = 48;
};

// Integral of Im f (or Re f) over delta_p: adaptive quadrature on
// |delta_p| <= R plus an analytic C2/x^2 + C4/x^4 tail fitted in the
// outermost decade.  Throws ConvergenceError if the quadrature fails.
double line_shape_integral(const DriveField& drive, const RateSet& rates,
                           const PopulationState& pops, const SumRuleConfig& cfg,
                           bool imaginary_part = true);

// |integral(Im f) - pi Gamma31 (r1 - r3)| / (pi Gamma31 max(|r1 - r3|, 1e-6)).
double sum_rule_residual(const DriveField& drive, const RateSet& rates,
                         const PopulationState& pops, const SumRuleConfig& cfg = {});

// One susceptibility sample per grid point; grid must be finite and sorted.
std::vector<SpectrumSample> spectrum_scan(std::span<const double> grid,
                                          const DriveField& drive, const RateSet& rates,
                                          const PopulationState& pops);

// Everything derived at one operating point of the degenerate model.
struct DegenerateModelPoint {
  RateSet rates;
  DriveField drive;
  double kappa = 0.0;
  double kprime = 0.0;   // degenerate convention
  double s_param = 0.0;
  DegeneratePopulations pops;
  double norm = 1.0;     // drive-off absorption peak is 1/g1; norm = g1
};
DegenerateModelPoint eval_degenerate_model(const AtomSystem& atom,
                                           const BathConditions& bath,
                                           const DriveField& drive,
                                           double chi_raman = 0.0);

// Spectrum scaled so the drive-off absorption maximum equals 1.
std::vector<SpectrumSample> scan_normalized(const DegenerateModelPoint& point,
                                            std::span<const double> grid);

}  // namespace awi
