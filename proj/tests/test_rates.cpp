#include <cmath>
#include <random>

#include "awi/rates.hpp"
#include "awi/units.hpp"
#include "doctest.h"

using namespace awi;

namespace {

const SpeciesCatalog& cat() { return SpeciesCatalog::builtin(); }

}  // namespace

TEST_CASE("number density") {
  const BathConditions zero = cat().make_bath("He", 0.0, 550.0);
  CHECK(number_density_cm3(zero) == 0.0);

  // N = P / (kB T), by hand: 101325 / (1.380649e-23 * 550) = 1.3344e25 m^-3.
  const BathConditions atm = cat().make_bath("He", 760.0, 550.0);
  CHECK(number_density_cm3(atm) == doctest::Approx(1.334e19).epsilon(0.01));

  const BathConditions low = cat().make_bath("He", 1.0, 300.0);
  CHECK(number_density_cm3(low) == doctest::Approx(3.22e16).epsilon(0.01));
}

TEST_CASE("mean relative speed") {
  const double m_na = cat().atom("Na").mass();
  const double m_he = 4.002602 * constants::atomic_mass_unit;

  CHECK(mean_relative_speed_cm_s(m_na, m_he, 550.0) ==
        mean_relative_speed_cm_s(m_he, m_na, 550.0));

  // Reduced mass 3.41 amu, hand evaluation.
  CHECK(mean_relative_speed_cm_s(m_na, m_he, 550.0) ==
        doctest::Approx(1.85e5).epsilon(0.02));

  // Vanishes with temperature.
  CHECK(mean_relative_speed_cm_s(m_na, m_he, 1e-12) <
        1e-3 * mean_relative_speed_cm_s(m_na, m_he, 300.0));
}

TEST_CASE("transfer rates") {
  AtomSystem atom = cat().atom("Na");

  SUBCASE("zero cross section gives zero rate") {
    atom.sigma_23_A2 = 0.0;
    atom.sigma_32_A2 = 0.0;
    const TransferRates w = transfer_rates(1e19, 2e5, atom);
    CHECK(w.w23 == 0.0);
    CHECK(w.w32 == 0.0);
  }

  SUBCASE("sodium-helium transfer rate near atmospheric pressure") {
    // sigma_23 = 4e-15 cm^2 at 760 Torr, 550 K.
    atom.sigma_23_A2 = 40.0;
    const BathConditions bath = cat().make_bath("He", 760.0, 550.0);
    const double n = number_density_cm3(bath);
    const double v = mean_relative_speed_cm_s(atom.mass(), bath.buffer_mass(), 550.0);
    const TransferRates w = transfer_rates(n, v, atom);
    CHECK(w.w23 > 7.5e9 / 1.5);
    CHECK(w.w23 < 7.5e9 * 1.5);
  }

  SUBCASE("potassium-helium rate matches the inline formula") {
    const AtomSystem& k = cat().atom("K");
    const BathConditions bath = cat().make_bath("He", 16.0, 550.0);
    const double n_cm3 = units::pressure_to_pascal(16.0) /
                         (constants::k_boltzmann * 550.0) * 1e-6;
    const double mu = k.mass() * bath.buffer_mass() / (k.mass() + bath.buffer_mass());
    const double v_cm_s =
        std::sqrt(8.0 * constants::k_boltzmann * 550.0 / (constants::pi * mu)) * 100.0;
    const double expected = n_cm3 * v_cm_s * 52.8e-16;
    const TransferRates w = transfer_rates(number_density_cm3(bath),
                                           mean_relative_speed_cm_s(k.mass(),
                                                                    bath.buffer_mass(),
                                                                    550.0),
                                           k);
    CHECK(w.w23 == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("rate set composition") {
  const AtomSystem& na = cat().atom("Na");

  SUBCASE("collisionless limit") {
    const RateSet r = build_rate_set(na, cat().make_bath("He", 0.0, 550.0));
    CHECK(r.gamma2 == na.a21);
    CHECK(r.gamma3 == na.a31);
    CHECK(r.gamma21 == 0.5 * na.a21);
    CHECK(r.gamma31 == 0.5 * na.a31);
    CHECK(r.w23 == 0.0);
  }

  SUBCASE("atmospheric sodium") {
    const RateSet r = build_rate_set(na, cat().make_bath("He", 760.0, 550.0));
    CHECK(r.gamma21 > 5e10 / 1.5);
    CHECK(r.gamma21 < 5e10 * 1.5);
    // Gamma32 tracks w23 at high pressure.  With the catalog's sigma_32 =
    // 1.87 sigma_23 the ratio settles at (1 + w32/w23)/2 + small A terms.
    CHECK(r.gamma32 / r.w23 == doctest::Approx(1.443).epsilon(0.01));
    CHECK(r.gamma32 < 1.5 * r.w23);
  }

  SUBCASE("population widths decompose exactly") {
    for (const double p : {0.0, 3.1, 16.0, 170.0, 760.0, 1800.0}) {
      for (const auto& name : {"Na", "K", "Rb"}) {
        const RateSet r = build_rate_set(cat().atom(name), cat().make_bath("He", p, 550.0));
        CHECK(r.gamma2 == r.a21 + r.w23);
        CHECK(r.gamma3 == r.a31 + r.w32);
      }
    }
  }

  SUBCASE("collision terms scale linearly with pressure") {
    const RateSet r1 = build_rate_set(na, cat().make_bath("He", 100.0, 550.0));
    const RateSet r2 = build_rate_set(na, cat().make_bath("He", 200.0, 550.0));
    CHECK(r2.w23 == doctest::Approx(2.0 * r1.w23).epsilon(1e-12));
    CHECK(r2.w32 == doctest::Approx(2.0 * r1.w32).epsilon(1e-12));
    CHECK(r2.gamma21 - 0.5 * r2.gamma2 ==
          doctest::Approx(2.0 * (r1.gamma21 - 0.5 * r1.gamma2)).epsilon(1e-12));
  }

  SUBCASE("chi_raman adds broadening-scale Raman dephasing") {
    const BathConditions bath = cat().make_bath("He", 100.0, 550.0);
    const RateSet r0 = build_rate_set(na, bath, 0.0);
    const RateSet r1 = build_rate_set(na, bath, 1.0);
    const double extra = r1.gamma32 - r0.gamma32;
    const double broad = r0.gamma21 - 0.5 * r0.gamma2;  // N v sigma_b21
    CHECK(extra == doctest::Approx(broad * (159.0 + 137.0) / (2.0 * 159.0)).epsilon(1e-12));
  }
}

TEST_CASE("detailed balance diagnostic") {
  const DetailedBalance d = detailed_balance_diagnostic(cat().atom("Na"), 550.0);
  CHECK(d.rate_ratio == doctest::Approx(77.0 / 41.1).epsilon(1e-12));
  CHECK(d.rate_ratio / d.boltzmann_ratio == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("saturation parameters") {
  const RateSet r = build_rate_set(cat().atom("Na"), cat().make_bath("He", 100.0, 550.0));

  SUBCASE("kappa basics") {
    CHECK(saturation_kappa({0.0, 0.0}, r) == 0.0);
    const double g = 1e9;
    CHECK(saturation_kappa({g, 0.0}, r) ==
          doctest::Approx(2.0 * g * g / (r.gamma21 * r.gamma2)).epsilon(1e-12));
    const double far = 100.0 * r.gamma21;
    const double ratio = saturation_kappa({g, far}, r) / saturation_kappa({g, 2 * far}, r);
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.01));
  }

  SUBCASE("kappa_prime reductions") {
    RateSet bare = r;
    bare.w23 = bare.w32 = 0.0;
    bare.gamma2 = bare.a21;
    bare.gamma3 = bare.a31;
    CHECK(kappa_prime(1.0, bare) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(kappa_prime(0.0, r) == 0.0);
  }

  SUBCASE("kappa_prime degenerate denominator") {
    RateSet bad = r;
    bad.a21 = bad.a31 = 0.0;
    bad.w23 = bad.gamma2 = 1e9;
    bad.w32 = bad.gamma3 = 1e9;
    CHECK_THROWS_AS(kappa_prime(1.0, bad), DomainError);
  }

  SUBCASE("high-pressure form of kappa_prime") {
    // w32 = w23 exp(-x) with x = delta_E/kB T; then kappa'
    // approaches (1+2e)/(1+e) * Gamma2/A21 * kappa.
    const AtomSystem& na = cat().atom("Na");
    const double x = na.boltzmann_x(550.0);
    RateSet hp = build_rate_set(na, cat().make_bath("He", 760.0, 550.0));
    hp.w32 = hp.w23 * std::exp(-x);
    hp.gamma3 = hp.a31 + hp.w32;
    const double kappa = 1.0;
    const double exact = kappa_prime(kappa, hp);
    const double e = std::exp(-x);
    const double limit = (1.0 + 2.0 * e) / (1.0 + e) * hp.gamma2 / hp.a21 * kappa;
    CHECK(exact == doctest::Approx(limit).epsilon(0.05));
  }

  SUBCASE("kappa_prime dominates kappa") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
      const double p = std::exp(std::log(0.5) + u(rng) * std::log(4000.0));
      const RateSet rs = build_rate_set(cat().atom("K"), cat().make_bath("He", p, 550.0));
      const double kappa = u(rng) * 10.0;
      CHECK(kappa_prime(kappa, rs) >= 2.0 * kappa - 1e-12);
    }
  }
}

TEST_CASE("kappa0 and the drive-strength conversions") {
  const AtomSystem& k = cat().atom("K");
  CHECK(kappa0_collisionless(0.0, k.a21) == 0.0);
  CHECK(kappa0_collisionless(0.5 * k.a21, k.a21) == doctest::Approx(1.0).epsilon(1e-12));

  // 4 (3.7e8)^2 / A21^2 lands near the 370 pairing.
  const double k0 = kappa0_collisionless(3.7e8, k.a21);
  CHECK(k0 > 370.0 / 1.5);
  CHECK(k0 < 370.0 * 1.5);

  CHECK(rabi_from_kappa0(k0, k.a21) == doctest::Approx(3.7e8).epsilon(1e-12));
}

TEST_CASE("rabi_from_intensity") {
  const AtomSystem& na = cat().atom("Na");
  CHECK(rabi_from_intensity(0.0, na) == 0.0);

  // Saturation intensity of the sodium D2 line, hand evaluation.
  CHECK(saturation_intensity_w_cm2(na) == doctest::Approx(6.2606e-3).epsilon(0.01));

  // Square-root law.
  CHECK(rabi_from_intensity(4.0 * 250.0, na) ==
        doctest::Approx(2.0 * rabi_from_intensity(250.0, na)).epsilon(1e-12));

  // 0.1 W into 1e-5 cm^2 = 10 kW/cm^2; Rabi frequency near 2 pi * 3.6 GHz.
  const double g = rabi_from_intensity(1e4, na);
  const double target = 2.0 * constants::pi * 3.6e9;
  CHECK(g > target / 2.0);
  CHECK(g < target * 2.0);
}
