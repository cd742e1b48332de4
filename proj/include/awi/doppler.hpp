#pragma once

#include <span>
#include <vector>

#include "awi/steady_state.hpp"

namespace awi {

struct DopplerConfig {
  double halfwidth = 0.0;     // Doppler HWHM of the probe transition, rad/s
  int n_nodes = 64;           // Gauss-Hermite velocity nodes
  bool copropagating = true;  // drive and probe share the Doppler sign
  double k_ratio = 1.0;       // k_p / k from the two wavelengths

  void validate() const;
};

// Gaussian HWHM (2 pi / lambda) sqrt(2 ln2 kB T / m), rad/s.
double doppler_halfwidth(const AtomSystem& atom, double temperature_k, double lambda_m);

// DopplerConfig for an atom/bath pair at the probe transition.
DopplerConfig make_doppler_config(const AtomSystem& atom, const BathConditions& bath,
                                  int n_nodes = 64, bool copropagating = true);

// Maxwell-Boltzmann average of the probe spectrum.  Per velocity node the
// detunings shift (delta_p -> delta_p - k_p v, delta -> delta - k v) and the
// degenerate populations are re-solved (kappa is velocity selective).
// Output is scaled so the velocity-averaged drive-off absorption peak is 1.
// Throws DomainError when the node spacing exceeds Gamma31.
std::vector<SpectrumSample> velocity_average(std::span<const double> grid,
                                             const DriveField& drive,
                                             const RateSet& rates,
                                             const AtomSystem& atom,
                                             const DopplerConfig& config);

}  // namespace awi
