#pragma once

#include <complex>

#include "awi/rates.hpp"
#include "awi/steady_state.hpp"

namespace awi {

// Density-matrix state of the V scheme; r1 = 1 - r2 - r3 by closure.
struct DensityState {
  std::complex<double> r31;
  std::complex<double> r32;
  std::complex<double> r21;
  double r2 = 0.0;
  double r3 = 0.0;

  double r1() const { return 1.0 - r2 - r3; }
};

// Right-hand side of the sign-reconciled equations of motion:
//   dr31 = i g_p (r1 - r3) - (G31 - i dp) r31 - i g r32
//   dr32 = i g_p conj(r21) - i g r31 - (G32 - i (dp - d)) r32
//   dr21 = i g (r1 - r2) - (G21 - i d) r21 - i g_p conj(r32)
//   dr3  = 2 Im(g_p* r31) - G3 r3 + w23 r2
//   dr2  = 2 Im(g*  r21) - G2 r2 + w32 r3
DensityState density_rhs(const DensityState& y, double g_p, const DriveField& drive,
                         double delta_p, const RateSet& rates);

// dr1 implied by closure; rhs + this sums to zero exactly.
double density_rhs_r1(const DensityState& y, double g_p, const DriveField& drive,
                      const RateSet& rates);

struct IntegrateOptions {
  double tol = 1e-10;           // steady-state detection threshold, in (1e-14, 1e-3)
  double step_rel_tol = 1e-13;  // per-step error control
  double horizon_factor = 50.0; // total time budget: factor / min(A21, A31)
  long max_steps = 10'000'000;
};

struct IntegrateReport {
  DensityState state;
  double t_final = 0.0;
  long steps = 0;
  double last_change = 0.0;        // max component change over the last window
  double max_population_excursion = 0.0;  // how far any population left [0, 1]
  double max_coherence_violation = 0.0;   // max |r_ij|^2 - r_i r_j
};

// Adaptive Dormand-Prince integration until the state stops changing
// (max component change per characteristic time 1/min-rate < tol).
// Throws ConvergenceError when the horizon or step budget is exhausted.
IntegrateReport integrate_to_steady(const DensityState& initial, double g_p,
                                    const DriveField& drive, double delta_p,
                                    const RateSet& rates,
                                    const IntegrateOptions& opts = {});

// Weak-probe response: integrate with g_p = eps * Gamma31 and return
// Gamma31 * r31 / g_p, directly comparable to susceptibility().
std::complex<double> linear_response_f(double delta_p, const DriveField& drive,
                                       const RateSet& rates,
                                       const IntegrateOptions& opts = {},
                                       double eps = 1e-6);

}  // namespace awi
