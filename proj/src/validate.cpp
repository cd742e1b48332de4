#include "awi/validate.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "awi/threshold.hpp"
#include "awi/transient.hpp"

namespace awi {

namespace {

struct Draw {
  const AtomSystem* atom;
  BathConditions bath;
  DriveField drive;
  RateSet rates;
};

class Sampler {
 public:
  Sampler(const SpeciesCatalog& catalog, unsigned seed, double chi_raman)
      : catalog_(catalog), rng_(seed), chi_raman_(chi_raman) {
    names_ = catalog.species_names();
  }

  Draw physical_draw(double g_max = 2e10, double p_max = 2000.0) {
    Draw d;
    d.atom = &catalog_.atom(names_[pick(names_.size())]);
    d.bath = catalog_.make_bath("He", log_uniform(0.5, p_max), uniform(450.0, 650.0));
    d.rates = build_rate_set(*d.atom, d.bath, chi_raman_);
    d.drive.g = log_uniform(1e6, g_max);
    d.drive.delta = uniform(-5.0, 5.0) * d.rates.gamma21;
    return d;
  }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  size_t pick(size_t n) {
    return std::uniform_int_distribution<size_t>(0, n - 1)(rng_);
  }

 private:
  const SpeciesCatalog& catalog_;
  std::vector<std::string> names_;
  std::mt19937 rng_;
  double chi_raman_;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

CheckResult check_lorentzian_sum_rule() {
  CheckResult c{"sum rule, exact Lorentzian", false, ""};
  RateSet r;
  r.a21 = r.gamma2 = 6.2e7;
  r.a31 = r.gamma3 = 6.2e7;
  r.gamma21 = 3.1e7;
  r.gamma31 = 3.1e7;
  r.gamma32 = 6.2e7;
  const DriveField off{0.0, 0.0};
  const PopulationState ground{1.0, 0.0, 0.0};
  const double resid = sum_rule_residual(off, r, ground, {});
  c.passed = resid < 1e-6;
  c.detail = "residual " + fmt(resid) + " (< 1e-6)";
  return c;
}

CheckResult check_random_sum_rule(const SpeciesCatalog& cat, const ValidateOptions& o,
                                  double chi_raman, const std::string& label) {
  CheckResult c{label, false, ""};
  Sampler s(cat, o.seed, chi_raman);
  double worst = 0.0;
  for (int i = 0; i < o.sum_rule_draws; ++i) {
    const Draw d = s.physical_draw();
    const double kp = kappa_prime(saturation_kappa(d.drive, d.rates), d.rates);
    const PopulationState pops = populations_nondegenerate(kp, d.rates);
    worst = std::max(worst, sum_rule_residual(d.drive, d.rates, pops, {}));
  }
  c.passed = worst < 1e-2;
  c.detail = "worst residual " + fmt(worst) + " over " +
             std::to_string(o.sum_rule_draws) + " draws (< 1e-2)";
  return c;
}

CheckResult check_transient_populations(const SpeciesCatalog& cat, const ValidateOptions& o) {
  CheckResult c{"transient steady state vs closed-form populations", false, ""};
  Sampler s(cat, o.seed + 1, o.chi_raman);
  IntegrateOptions iopts;
  iopts.tol = 1e-11;
  iopts.horizon_factor = 400.0;
  double worst = 0.0;
  for (int i = 0; i < o.transient_population_draws; ++i) {
    const Draw d = s.physical_draw(5e9, 300.0);
    const auto rep = integrate_to_steady(DensityState{}, 0.0, d.drive, 0.0, d.rates, iopts);
    const double kp = kappa_prime(saturation_kappa(d.drive, d.rates), d.rates);
    const PopulationState pops = populations_nondegenerate(kp, d.rates);
    const double denom = std::max({pops.r1, pops.r2, pops.r3});
    worst = std::max({worst, std::abs(rep.state.r1() - pops.r1) / denom,
                      std::abs(rep.state.r2 - pops.r2) / denom,
                      std::abs(rep.state.r3 - pops.r3) / denom});
  }
  c.passed = worst < 1e-8;
  c.detail = "worst relative difference " + fmt(worst) + " (< 1e-8)";
  return c;
}

CheckResult check_linear_response(const SpeciesCatalog& cat, const ValidateOptions& o) {
  CheckResult c{"transient linear response vs susceptibility", false, ""};
  Sampler s(cat, o.seed + 2, o.chi_raman);
  IntegrateOptions iopts;
  iopts.tol = 1e-11;
  iopts.horizon_factor = 400.0;
  double worst = 0.0;
  for (int i = 0; i < o.linear_response_draws; ++i) {
    const Draw d = s.physical_draw(5e9, 300.0);
    const double delta_p = s.uniform(-3.0, 3.0) * d.rates.gamma31;
    const std::complex<double> f_t = linear_response_f(delta_p, d.drive, d.rates, iopts);
    const double kp = kappa_prime(saturation_kappa(d.drive, d.rates), d.rates);
    const PopulationState pops = populations_nondegenerate(kp, d.rates);
    const std::complex<double> f_s = susceptibility(delta_p, d.drive, d.rates, pops);
    worst = std::max(worst, std::abs(f_t - f_s) / std::max(std::abs(f_s), 1e-2));
  }
  c.passed = worst < 1e-5;
  c.detail = "worst relative difference " + fmt(worst) + " (< 1e-5)";
  return c;
}

CheckResult check_closed_forms(const SpeciesCatalog& cat, const ValidateOptions& o) {
  CheckResult c{"degenerate closed forms vs direct solve", false, ""};
  Sampler s(cat, o.seed + 3, o.chi_raman);
  double worst = 0.0;
  for (int i = 0; i < o.closed_form_draws; ++i) {
    const Draw d = s.physical_draw();
    const double kappa = saturation_kappa(d.drive, d.rates);
    const auto solved = populations_degenerate(kappa, d.rates, 2, 4, 2);
    const auto closed = populations_degenerate_closed(kappa, d.rates, 2, 4, 2);
    worst = std::max({worst, std::abs(solved.R1 - closed.R1),
                      std::abs(solved.R2 - closed.R2), std::abs(solved.R3 - closed.R3)});
  }
  c.passed = worst < 1e-12;
  c.detail = "worst absolute difference " + fmt(worst) + " (< 1e-12)";
  return c;
}

CheckResult check_predicate_sign(const SpeciesCatalog& cat, const ValidateOptions& o) {
  CheckResult c{"AWI predicate vs resonant Im f sign", false, ""};
  bool ok = true;
  for (const auto& name : {"Na", "K", "Rb"}) {
    const AtomSystem& atom = cat.atom(name);
    const BathConditions tmpl = cat.make_bath("He", 0.0, 550.0);

    // Find the sign change of resonant Im f and compare the predicate on
    // both sides of it.
    const auto root = awi_threshold(20.0, atom, tmpl, o.chi_raman);
    if (!root) continue;
    for (const double factor : {1.0 - 1e-4, 1.0 + 1e-4}) {
      BathConditions bath = tmpl;
      bath.pressure_torr = 20.0;
      const DriveField drive{rabi_from_kappa0(*root * factor, atom.a21), 0.0};
      const auto pt = eval_degenerate_model(atom, bath, drive, o.chi_raman);
      const double im_f0 =
          susceptibility(0.0, pt.drive, pt.rates, pt.pops.per_sublevel()).imag();
      const bool pred = awi_predicate(pt.s_param, pt.pops.per_sublevel());
      ok = ok && (pred == (im_f0 < 0.0));
    }
  }
  c.passed = ok;
  c.detail = ok ? "predicate matches the sign on both sides of each crossing"
              : "predicate and resonant sign disagree";
  return c;
}

// w32/w23 against (g2/g3) exp(-dE/kBT) at 550 K; informational.
CheckResult report_detailed_balance(const SpeciesCatalog& cat) {
  CheckResult c{"detailed-balance diagnostic (reported, not enforced)", true, ""};
  std::ostringstream d;
  for (const auto& name : {"Na", "K", "Rb"}) {
    const DetailedBalance db = detailed_balance_diagnostic(cat.atom(name), 550.0);
    d << name << " w32/w23 " << fmt(db.rate_ratio) << " vs Boltzmann "
      << fmt(db.boltzmann_ratio) << "; ";
  }
  c.detail = d.str();
  return c;
}

CheckResult check_threshold_bracketing(const SpeciesCatalog& cat, const ValidateOptions& o) {
  CheckResult c{"critical-pressure bracketing and threshold ordering", false, ""};
  std::ostringstream detail;
  bool ok = true;
  for (const auto& name : {"Na", "K", "Rb"}) {
    const AtomSystem& atom = cat.atom(name);
    const BathConditions tmpl = cat.make_bath("He", 0.0, 550.0);
    const CriticalPoint cp = critical_density(atom, tmpl);
    if (!cp.pressure_torr) {
      ok = false;
      detail << name << ": no critical pressure; ";
      continue;
    }
    const bool below = !inversion_threshold(0.9 * *cp.pressure_torr, atom, tmpl, o.chi_raman);
    const bool above =
        inversion_threshold(1.1 * *cp.pressure_torr, atom, tmpl, o.chi_raman).has_value();
    ok = ok && below && above;

    // AWI threshold never exceeds the inversion threshold where both exist.
    for (int i = 0; i < 6; ++i) {
      const double p = *cp.pressure_torr * std::pow(10.0, 0.1 + 0.3 * i);
      const auto inv = inversion_threshold(p, atom, tmpl, o.chi_raman);
      const auto awi = awi_threshold(p, atom, tmpl, o.chi_raman);
      if (inv && awi) ok = ok && (*awi <= *inv * (1.0 + 1e-9));
    }
    detail << name << ": P_crit " << fmt(*cp.pressure_torr) << " Torr; ";
  }
  c.passed = ok;
  c.detail = detail.str() + (ok ? "brackets and ordering hold" : "bracketing failed");
  return c;
}

}  // namespace

std::vector<CheckResult> run_validation(const SpeciesCatalog& catalog,
                                        const ValidateOptions& opts) {
  std::vector<CheckResult> out;
  out.push_back(check_lorentzian_sum_rule());
  out.push_back(check_random_sum_rule(catalog, opts, opts.chi_raman,
                                      "sum rule, randomized draws"));
  ValidateOptions strong = opts;
  strong.sum_rule_draws = std::max(10, opts.sum_rule_draws / 5);
  out.push_back(check_random_sum_rule(catalog, strong, 1e3,
                                      "sum rule, chi_raman = 1e3"));
  out.push_back(check_transient_populations(catalog, opts));
  out.push_back(check_linear_response(catalog, opts));
  out.push_back(check_closed_forms(catalog, opts));
  out.push_back(check_predicate_sign(catalog, opts));
  out.push_back(check_threshold_bracketing(catalog, opts));
  out.push_back(report_detailed_balance(catalog));
  return out;
}

}  // namespace awi
