#include <cmath>
#include <complex>
#include <random>

#include "awi/transient.hpp"
#include "doctest.h"

using namespace awi;

namespace {

const SpeciesCatalog& cat() { return SpeciesCatalog::builtin(); }

RateSet rates_at(const char* species, double p_torr, double t_k = 550.0) {
  return build_rate_set(cat().atom(species), cat().make_bath("He", p_torr, t_k));
}

double state_distance(const DensityState& a, const DensityState& b) {
  return std::max({std::abs(a.r31 - b.r31), std::abs(a.r32 - b.r32),
                   std::abs(a.r21 - b.r21), std::abs(a.r2 - b.r2),
                   std::abs(a.r3 - b.r3)});
}

}  // namespace

TEST_CASE("density-matrix right-hand side") {
  const RateSet r = rates_at("Na", 100.0);

  SUBCASE("dark equilibrium is stationary") {
    const DensityState ground{};
    const DensityState d = density_rhs(ground, 0.0, {0.0, 0.0}, 0.0, r);
    CHECK(state_distance(d, DensityState{}) == 0.0);
  }

  SUBCASE("probe coherences stay dark without a probe") {
    DensityState y{};
    y.r21 = {0.01, -0.02};
    y.r2 = 0.3;
    y.r3 = 0.1;
    const DensityState d = density_rhs(y, 0.0, {2e9, 5e8}, 1e9, r);
    CHECK(std::abs(d.r31) == 0.0);
    CHECK(std::abs(d.r32) == 0.0);
  }

  SUBCASE("population derivatives close to zero trace") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
      DensityState y;
      y.r31 = {0.1 * u(rng), 0.1 * u(rng)};
      y.r32 = {0.1 * u(rng), 0.1 * u(rng)};
      y.r21 = {0.1 * u(rng), 0.1 * u(rng)};
      y.r2 = 0.4 * (u(rng) + 1.0) / 2.0;
      y.r3 = 0.4 * (u(rng) + 1.0) / 2.0;
      const DriveField drive{1e9 * (u(rng) + 1.5), 1e9 * u(rng)};
      const double g_p = 1e8 * (u(rng) + 1.5);
      const double delta_p = 1e9 * u(rng);
      const DensityState d = density_rhs(y, g_p, drive, delta_p, r);
      const double dr1 = density_rhs_r1(y, g_p, drive, r);
      const double scale = std::max({std::abs(d.r2), std::abs(d.r3), std::abs(dr1), 1.0});
      CHECK(std::abs(dr1 + d.r2 + d.r3) < 1e-14 * scale);
    }
  }
}

TEST_CASE("integration to steady state") {
  SUBCASE("dark start stays put") {
    const RateSet r = rates_at("Na", 10.0);
    const IntegrateReport rep = integrate_to_steady(DensityState{}, 0.0, {0.0, 0.0}, 0.0, r);
    CHECK(state_distance(rep.state, DensityState{}) < 1e-15);
    CHECK(rep.last_change < 1e-10);
  }

  SUBCASE("drive-only steady state matches the closed form") {
    std::mt19937 rng(22);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    IntegrateOptions opts;
    opts.tol = 1e-11;
    opts.horizon_factor = 400.0;
    const char* names[] = {"Na", "K", "Rb"};
    for (int i = 0; i < 5; ++i) {
      const AtomSystem& atom = cat().atom(names[i % 3]);
      const double p = std::exp(std::log(1.0) + u(rng) * std::log(300.0));
      const RateSet r = build_rate_set(atom, cat().make_bath("He", p, 550.0));
      const DriveField drive{std::pow(10.0, 7.5 + 1.8 * u(rng)),
                             (2.0 * u(rng) - 1.0) * r.gamma21};
      const IntegrateReport rep = integrate_to_steady(DensityState{}, 0.0, drive, 0.0, r, opts);
      const double kp = kappa_prime(saturation_kappa(drive, r), r);
      const PopulationState pops = populations_nondegenerate(kp, r);
      const double denom = std::max({pops.r1, pops.r2, pops.r3});
      CHECK(std::abs(rep.state.r1() - pops.r1) / denom < 1e-8);
      CHECK(std::abs(rep.state.r2 - pops.r2) / denom < 1e-8);
      CHECK(std::abs(rep.state.r3 - pops.r3) / denom < 1e-8);
    }
  }

  SUBCASE("strong drive converges and stays physical") {
    const RateSet r = rates_at("Na", 100.0);
    const double g = std::sqrt(10.0 * r.gamma21 * r.gamma32);  // S = 10
    const IntegrateReport rep = integrate_to_steady(DensityState{}, 0.0, {g, 0.0}, 0.0, r);
    CHECK(rep.state.r2 > 0.0);
    CHECK(rep.max_population_excursion < 1e-9);
    CHECK(rep.max_coherence_violation < 1e-9);
  }

  SUBCASE("steady state is independent of the initial condition") {
    const RateSet r = rates_at("K", 16.0);
    const DriveField drive{5e8, 2e8};
    IntegrateOptions opts;
    opts.tol = 1e-11;
    opts.horizon_factor = 400.0;
    const IntegrateReport a = integrate_to_steady(DensityState{}, 0.0, drive, 0.0, r, opts);
    DensityState uniform;
    uniform.r2 = 1.0 / 3.0;
    uniform.r3 = 1.0 / 3.0;
    const IntegrateReport b = integrate_to_steady(uniform, 0.0, drive, 0.0, r, opts);
    CHECK(state_distance(a.state, b.state) < 1e-8);
  }

  SUBCASE("tolerance domain is enforced") {
    const RateSet r = rates_at("Na", 10.0);
    IntegrateOptions opts;
    opts.tol = 1e-2;
    CHECK_THROWS_AS(integrate_to_steady(DensityState{}, 0.0, {1e8, 0.0}, 0.0, r, opts),
                    ValidationError);
  }

  SUBCASE("exhausted horizon reports non-convergence") {
    const RateSet r = rates_at("Na", 10.0);
    IntegrateOptions opts;
    opts.horizon_factor = 1e-3;  // far too short to settle
    CHECK_THROWS_AS(integrate_to_steady(DensityState{}, 0.0, {1e9, 0.0}, 0.0, r, opts),
                    ConvergenceError);
  }
}

TEST_CASE("linear response") {
  SUBCASE("drive-off response is the Lorentzian") {
    const RateSet r = rates_at("Na", 50.0);
    for (const double dp : {0.0, 0.7 * r.gamma31, -2.0 * r.gamma31}) {
      const std::complex<double> f = linear_response_f(dp, {0.0, 0.0}, r);
      const std::complex<double> expect =
          std::complex<double>(0.0, r.gamma31) / std::complex<double>(r.gamma31, -dp);
      CHECK(std::abs(f - expect) < 1e-6);
    }
  }

  SUBCASE("matches the closed-form susceptibility") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    IntegrateOptions opts;
    opts.tol = 1e-11;
    opts.horizon_factor = 400.0;
    const char* names[] = {"Na", "K", "Rb"};
    for (int i = 0; i < 4; ++i) {
      const AtomSystem& atom = cat().atom(names[i % 3]);
      const double p = std::exp(u(rng) * std::log(300.0));
      const RateSet r = build_rate_set(atom, cat().make_bath("He", p, 550.0));
      const DriveField drive{std::pow(10.0, 7.5 + 1.8 * u(rng)),
                             (2.0 * u(rng) - 1.0) * 2.0 * r.gamma21};
      const double dp = (2.0 * u(rng) - 1.0) * 3.0 * r.gamma31;
      const std::complex<double> f_t = linear_response_f(dp, drive, r, opts);
      const double kp = kappa_prime(saturation_kappa(drive, r), r);
      const PopulationState pops = populations_nondegenerate(kp, r);
      const std::complex<double> f_s = susceptibility(dp, drive, r, pops);
      CHECK(std::abs(f_t - f_s) / std::max(std::abs(f_s), 1e-2) < 1e-5);
    }
  }

  SUBCASE("response is linear in the probe strength") {
    const RateSet r = rates_at("K", 16.0);
    const DriveField drive{8e8, 0.0};
    IntegrateOptions opts;
    opts.tol = 1e-11;
    opts.horizon_factor = 400.0;
    const std::complex<double> f6 = linear_response_f(0.3 * r.gamma31, drive, r, opts, 1e-6);
    for (const double eps : {1e-5, 1e-7}) {
      const std::complex<double> f = linear_response_f(0.3 * r.gamma31, drive, r, opts, eps);
      CHECK(std::abs(f - f6) / std::abs(f6) < 1e-4);
    }
  }
}
