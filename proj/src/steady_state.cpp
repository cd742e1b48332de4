#include "awi/steady_state.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "awi/constants.hpp"

namespace awi {

using constants::pi;

namespace {

constexpr double kZeroDiff = 1e-10;  // population differences below this count as zero

double clamp_zero(double d) { return std::abs(d) < kZeroDiff ? 0.0 : d; }

// Gaussian elimination with partial pivoting on a 3x3 system.
std::array<double, 3> solve3(std::array<std::array<double, 4>, 3> m) {
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    }
    if (std::abs(m[piv][col]) < 1e-300) {
      throw DomainError("populations_degenerate: singular population system");
    }
    std::swap(m[col], m[piv]);
    for (int r = col + 1; r < 3; ++r) {
      const double fac = m[r][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[r][c] -= fac * m[col][c];
    }
  }
  std::array<double, 3> x{};
  for (int r = 2; r >= 0; --r) {
    double s = m[r][3];
    for (int c = r + 1; c < 3; ++c) s -= m[r][c] * x[c];
    x[r] = s / m[r][r];
  }
  return x;
}

}  // namespace

PopulationState populations_nondegenerate(double kprime, const RateSet& rates) {
  if (kprime < 0) throw ValidationError("populations_nondegenerate: kappa' must be >= 0");
  rates.validate();
  const double r2 = rates.gamma3 / (2.0 * rates.gamma3 + rates.w23) * kprime / (1.0 + kprime);
  const double r3 = rates.w23 / rates.gamma3 * r2;
  return {1.0 - r2 - r3, r2, r3};
}

HighPressureResult populations_high_pressure(const DriveField& drive, double gamma21,
                                             double a21, double x) {
  if (!(x > 0)) throw ValidationError("populations_high_pressure: x must be positive");
  if (!(gamma21 > 0) || !(a21 > 0)) {
    throw ValidationError("populations_high_pressure: Gamma21 and A21 must be positive");
  }
  const double e = std::exp(-x);
  const double g2 = drive.g * drive.g;
  const double kprime = (1.0 + 2.0 * e) / (1.0 + e) * 2.0 * g2 * gamma21 /
                        (a21 * (gamma21 * gamma21 + drive.delta * drive.delta));
  const double r13 = (1.0 - kprime * (1.0 - e) / (1.0 + 2.0 * e)) / (1.0 + kprime);
  return {r13, kprime};
}

double kappa_prime_degenerate(double kappa, const RateSet& rates, int g1, int g2, int g3) {
  if (kappa < 0) throw ValidationError("kappa_prime_degenerate: kappa must be >= 0");
  if (g1 <= 0 || g2 <= 0 || g3 <= 0) {
    throw ValidationError("kappa_prime_degenerate: degeneracies must be positive");
  }
  const double a = rates.w23 / rates.gamma3;
  const double b = rates.w32 / rates.gamma2;
  const double denom = 1.0 - a * b;
  if (!(denom > 0)) {
    throw DomainError("kappa_prime_degenerate: 1 - w23 w32/(Gamma2 Gamma3) must be positive");
  }
  const double gamma_ratio = static_cast<double>(g2) / g1;
  return kappa * (1.0 + gamma_ratio * (1.0 + a)) / denom;
}

DegeneratePopulations populations_degenerate(double kappa, const RateSet& rates,
                                             int g1, int g2, int g3) {
  if (kappa < 0) throw ValidationError("populations_degenerate: kappa must be >= 0");
  if (g1 <= 0 || g2 <= 0 || g3 <= 0) {
    throw ValidationError("populations_degenerate: degeneracies must be positive");
  }
  rates.validate();
  const double gr = static_cast<double>(g2) / g1;
  // Steady balance in units of Gamma2 / Gamma3:
  //   kappa (g2/g1) R1 - (kappa + 1) R2 + (w32/Gamma2) R3 = 0
  //   (w23/Gamma3) R2 - R3 = 0
  //   R1 + R2 + R3 = 1
  const std::array<std::array<double, 4>, 3> m{{
      {kappa * gr, -(kappa + 1.0), rates.w32 / rates.gamma2, 0.0},
      {0.0, rates.w23 / rates.gamma3, -1.0, 0.0},
      {1.0, 1.0, 1.0, 1.0},
  }};
  const auto x = solve3(m);
  return {x[0], x[1], x[2], g1, g2, g3};
}

DegeneratePopulations populations_degenerate_closed(double kappa, const RateSet& rates,
                                                    int g1, int g2, int g3) {
  const double kp = kappa_prime_degenerate(kappa, rates, g1, g2, g3);
  const double a = rates.w23 / rates.gamma3;
  const double gr = static_cast<double>(g2) / g1;
  const double m = 1.0 + gr * (1.0 + a);
  const double r2 = gr / m * kp / (1.0 + kp);
  const double r3 = a * r2;
  const double r1 = (1.0 + kp / m) / (1.0 + kp);
  return {r1, r2, r3, g1, g2, g3};
}

std::complex<double> susceptibility(double delta_p, const DriveField& drive,
                                    const RateSet& rates, const PopulationState& pops) {
  const std::complex<double> i(0.0, 1.0);
  const double g2 = drive.g * drive.g;
  const std::complex<double> d2(rates.gamma32, -(delta_p - drive.delta));
  const std::complex<double> num =
      d2 * (pops.r1 - pops.r3) -
      g2 * (pops.r1 - pops.r2) / std::complex<double>(rates.gamma21, drive.delta);
  const std::complex<double> den =
      d2 * std::complex<double>(rates.gamma31, -delta_p) + g2;
  return i * rates.gamma31 * num / den;
}

double resonant_f(double s_param, const PopulationState& pops) {
  if (s_param < 0) throw ValidationError("resonant_f: S must be >= 0");
  return ((pops.r1 - pops.r3) - (pops.r1 - pops.r2) * s_param) / (1.0 + s_param);
}

bool awi_predicate(double s_param, const PopulationState& pops) {
  if (s_param < 0) throw ValidationError("awi_predicate: S must be >= 0");
  return clamp_zero(pops.r1 - pops.r2) * s_param > clamp_zero(pops.r1 - pops.r3);
}

double s_parameter(const DriveField& drive, const RateSet& rates) {
  return drive.g * drive.g / (rates.gamma21 * rates.gamma32);
}

namespace {

// Two-term inverse-power tail C2/x^2 + C4/x^4 fitted at |x| = R/3 and R,
// integrated from R to infinity.
double tail_beyond(const std::function<double(double)>& f, double r, int sign) {
  const double s1 = sign * r / 3.0;
  const double s2 = sign * r;
  const double y1 = f(s1);
  const double y2 = f(s2);
  // Solve [1/s1^2 1/s1^4; 1/s2^2 1/s2^4] [C2 C4]' = [y1 y2]'.
  const double a11 = 1.0 / (s1 * s1), a12 = 1.0 / (s1 * s1 * s1 * s1);
  const double a21 = 1.0 / (s2 * s2), a22 = 1.0 / (s2 * s2 * s2 * s2);
  const double det = a11 * a22 - a12 * a21;
  if (det == 0.0) return 0.0;
  const double c2 = (y1 * a22 - y2 * a12) / det;
  const double c4 = (a11 * y2 - a21 * y1) / det;
  return c2 / r + c4 / (3.0 * r * r * r);
}

}  // namespace

double line_shape_integral(const DriveField& drive, const RateSet& rates,
                           const PopulationState& pops, const SumRuleConfig& cfg,
                           bool imaginary_part) {
  rates.validate();
  if (cfg.half_range_factor < 50.0) {
    throw ValidationError("line_shape_integral: half range must be >= 50 x scale");
  }
  const double scale = std::max({rates.gamma31, rates.gamma32, std::abs(drive.g),
                                 std::abs(drive.delta)});
  const double r = cfg.half_range_factor * scale;
  const auto f = [&](double dp) {
    const std::complex<double> v = susceptibility(dp, drive, rates, pops);
    return imaginary_part ? v.imag() : v.real();
  };

  // Split at the features (probe resonance, two-photon resonance).
  std::vector<double> pts{-r, 0.0, drive.delta, r};
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  const double abs_tol = cfg.rel_tol * pi * rates.gamma31 *
                         std::max(std::abs(pops.r1 - pops.r3), 1e-3);
  double total = 0.0;
  double worst = 0.0;
  bool ok = true;
  const int nseg = static_cast<int>(pts.size()) - 1;
  for (int i = 0; i < nseg; ++i) {
    if (pts[i + 1] <= pts[i]) continue;
    const AdaptiveResult res =
        integrate_adaptive(f, pts[i], pts[i + 1], abs_tol / nseg, cfg.max_depth);
    total += res.value;
    ok = ok && res.converged;
    worst = std::max(worst, res.worst_panel_error);
  }
  if (!ok && worst > 100.0) {
    throw ConvergenceError("line_shape_integral: adaptive quadrature failed its tolerance");
  }
  total += tail_beyond(f, r, +1) + tail_beyond(f, r, -1);
  return total;
}

double sum_rule_residual(const DriveField& drive, const RateSet& rates,
                         const PopulationState& pops, const SumRuleConfig& cfg) {
  const double integral = line_shape_integral(drive, rates, pops, cfg, true);
  const double expected = pi * rates.gamma31 * (pops.r1 - pops.r3);
  const double norm = pi * rates.gamma31 * std::max(std::abs(pops.r1 - pops.r3), 1e-6);
  return std::abs(integral - expected) / norm;
}

std::vector<SpectrumSample> spectrum_scan(std::span<const double> grid,
                                          const DriveField& drive, const RateSet& rates,
                                          const PopulationState& pops) {
  for (size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw ValidationError("spectrum_scan: grid must be finite");
    if (i > 0 && grid[i] < grid[i - 1]) {
      throw ValidationError("spectrum_scan: grid must be sorted ascending");
    }
  }
  std::vector<SpectrumSample> out;
  out.reserve(grid.size());
  for (const double dp : grid) {
    out.push_back({dp, susceptibility(dp, drive, rates, pops)});
  }
  return out;
}

DegenerateModelPoint eval_degenerate_model(const AtomSystem& atom,
                                           const BathConditions& bath,
                                           const DriveField& drive, double chi_raman) {
  DegenerateModelPoint pt;
  pt.rates = build_rate_set(atom, bath, chi_raman);
  pt.drive = drive;
  pt.kappa = saturation_kappa(drive, pt.rates);
  pt.kprime = kappa_prime_degenerate(pt.kappa, pt.rates, atom.g1, atom.g2, atom.g3);
  pt.s_param = s_parameter(drive, pt.rates);
  pt.pops = populations_degenerate(pt.kappa, pt.rates, atom.g1, atom.g2, atom.g3);
  pt.norm = atom.g1;  // drive-off absorption peak is r1 - r3 = 1/g1
  return pt;
}

std::vector<SpectrumSample> scan_normalized(const DegenerateModelPoint& point,
                                            std::span<const double> grid) {
  auto samples = spectrum_scan(grid, point.drive, point.rates, point.pops.per_sublevel());
  for (auto& s : samples) s.f *= point.norm;
  return samples;
}

}  // namespace awi
