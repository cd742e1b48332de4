#include "awi/doppler.hpp"

#include <cmath>

#include "awi/constants.hpp"
#include "awi/quadrature.hpp"

namespace awi {

using constants::k_boltzmann;
using constants::pi;

void DopplerConfig::validate() const {
  if (halfwidth < 0) throw ValidationError("doppler: halfwidth must be >= 0");
  if (n_nodes < 8) throw ValidationError("doppler: need at least 8 nodes");
  if (!(k_ratio > 0)) throw ValidationError("doppler: k_ratio must be positive");
}

double doppler_halfwidth(const AtomSystem& atom, double temperature_k, double lambda_m) {
  if (!(temperature_k > 0) || !(lambda_m > 0)) {
    throw ValidationError("doppler_halfwidth: temperature and wavelength must be positive");
  }
  const double sigma_v = std::sqrt(2.0 * std::log(2.0) * k_boltzmann * temperature_k /
                                   atom.mass());
  return 2.0 * pi / lambda_m * sigma_v;
}

DopplerConfig make_doppler_config(const AtomSystem& atom, const BathConditions& bath,
                                  int n_nodes, bool copropagating) {
  DopplerConfig cfg;
  cfg.halfwidth = doppler_halfwidth(atom, bath.temperature_k, atom.lambda_probe());
  cfg.n_nodes = n_nodes;
  cfg.copropagating = copropagating;
  cfg.k_ratio = atom.lambda_drive() / atom.lambda_probe();  // k_p / k
  cfg.validate();
  return cfg;
}

std::vector<SpectrumSample> velocity_average(std::span<const double> grid,
                                             const DriveField& drive,
                                             const RateSet& rates,
                                             const AtomSystem& atom,
                                             const DopplerConfig& config) {
  config.validate();
  rates.validate();

  const double inv_g1 = 1.0 / atom.g1;

  if (config.halfwidth == 0.0) {
    // Delta-function velocity distribution: single-atom spectrum.
    const double kappa = saturation_kappa(drive, rates);
    const auto pops = populations_degenerate(kappa, rates, atom.g1, atom.g2, atom.g3);
    auto samples = spectrum_scan(grid, drive, rates, pops.per_sublevel());
    for (auto& s : samples) s.f *= atom.g1;
    return samples;
  }

  // k_p v at the Gauss-Hermite nodes: v = v_w t, k_p v_w = halfwidth/sqrt(ln 2).
  const double shift_scale = config.halfwidth / std::sqrt(std::log(2.0));
  const GaussHermite gh = gauss_hermite(config.n_nodes);

  // Resolution check at the densest (central) part of the node set.
  const int mid = config.n_nodes / 2;
  const double central_gap = shift_scale * (gh.nodes[mid] - gh.nodes[mid - 1]);
  if (central_gap > rates.gamma31) {
    throw DomainError(
        "velocity_average: node spacing " + std::to_string(central_gap) +
        " rad/s exceeds Gamma31 = " + std::to_string(rates.gamma31) +
        " rad/s; increase n_nodes");
  }

  double wsum = 0.0;
  for (const double w : gh.weights) wsum += w;

  const double drive_sign = config.copropagating ? 1.0 : -1.0;

  std::vector<SpectrumSample> out(grid.size());
  for (size_t j = 0; j < grid.size(); ++j) out[j].delta_p = grid[j];

  double peak0 = 0.0;  // velocity-averaged drive-off absorption at delta_p = 0
  for (int i = 0; i < config.n_nodes; ++i) {
    const double weight = gh.weights[i] / wsum;
    const double s = shift_scale * gh.nodes[i];  // probe-frame shift k_p v

    DriveField shifted = drive;
    shifted.delta = drive.delta - drive_sign * s / config.k_ratio;

    const double kappa = saturation_kappa(shifted, rates);
    const auto pops = populations_degenerate(kappa, rates, atom.g1, atom.g2, atom.g3);
    const PopulationState sub = pops.per_sublevel();

    for (size_t j = 0; j < grid.size(); ++j) {
      out[j].f += weight * susceptibility(grid[j] - s, shifted, rates, sub);
    }
    peak0 += weight * inv_g1 * rates.gamma31 * rates.gamma31 /
             (rates.gamma31 * rates.gamma31 + s * s);
  }

  for (auto& sample : out) sample.f /= peak0;
  return out;
}

}  // namespace awi
