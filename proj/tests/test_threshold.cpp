#include <cmath>

#include "awi/threshold.hpp"
#include "doctest.h"

using namespace awi;

namespace {

const SpeciesCatalog& cat() { return SpeciesCatalog::builtin(); }

BathConditions he_template() { return cat().make_bath("He", 0.0, 550.0); }

}  // namespace

TEST_CASE("critical density") {
  SUBCASE("balanced cross sections give no finite critical density") {
    AtomSystem atom = cat().atom("Na");
    atom.sigma_32_A2 = atom.sigma_23_A2 * atom.g2 / atom.g3;  // g2 s23 = g3 s32
    const CriticalPoint cp = critical_density(atom, he_template());
    CHECK_FALSE(cp.density_cm3.has_value());
  }

  SUBCASE("sodium value matches the inline formula") {
    const AtomSystem& na = cat().atom("Na");
    const BathConditions tmpl = he_template();
    const double vbar = mean_relative_speed_cm_s(na.mass(), tmpl.buffer_mass(), 550.0);
    const double diff_cm2 = (4.0 * 41.1 - 2.0 * 77.0) * 1e-16;  // 10.4 A^2
    const double expected = 2.0 * na.a31 / (vbar * diff_cm2);
    const CriticalPoint cp = critical_density(na, tmpl);
    REQUIRE(cp.density_cm3.has_value());
    CHECK(*cp.density_cm3 == doctest::Approx(expected).epsilon(1e-10));
  }

  SUBCASE("critical pressure brackets the onset of the inversion threshold") {
    for (const auto& name : {"Na", "K", "Rb"}) {
      const AtomSystem& atom = cat().atom(name);
      const CriticalPoint cp = critical_density(atom, he_template());
      REQUIRE(cp.pressure_torr.has_value());
      CHECK_FALSE(inversion_threshold(0.9 * *cp.pressure_torr, atom, he_template()));
      CHECK(inversion_threshold(1.1 * *cp.pressure_torr, atom, he_template()).has_value());
    }
  }
}

TEST_CASE("threshold roots") {
  const AtomSystem& k = cat().atom("K");

  SUBCASE("potassium AWI threshold near its optimum pressure") {
    const auto k0 = awi_threshold(3.1, k, he_template());
    REQUIRE(k0.has_value());
    CHECK(*k0 > 92.0 / 2.0);
    CHECK(*k0 < 92.0 * 2.0);
  }

  SUBCASE("root residual is tiny in normalized units") {
    const auto k0 = awi_threshold(3.1, k, he_template());
    REQUIRE(k0.has_value());
    const DriveField drive{rabi_from_kappa0(*k0, k.a21), 0.0};
    BathConditions bath = he_template();
    bath.pressure_torr = 3.1;
    const auto pt = eval_degenerate_model(k, bath, drive);
    const double resid = (pt.pops.diff13() - pt.pops.diff12() * pt.s_param) * k.g1;
    CHECK(std::abs(resid) < 1e-8);
  }

  SUBCASE("inversion threshold above critical pressure converges") {
    const CriticalPoint cp = critical_density(k, he_template());
    const double p = 2.0 * *cp.pressure_torr;
    const auto k0 = inversion_threshold(p, k, he_template());
    REQUIRE(k0.has_value());
    // Re-evaluating the population difference at the root: relative kappa0
    // resolution translates to a 1e-6-level population residual.
    const DriveField drive{rabi_from_kappa0(*k0, k.a21), 0.0};
    BathConditions bath = he_template();
    bath.pressure_torr = p;
    const auto pt = eval_degenerate_model(k, bath, drive);
    CHECK(std::abs(pt.pops.diff13()) * k.g1 < 1e-6);
  }

  SUBCASE("AWI threshold never exceeds the inversion threshold") {
    for (const auto& name : {"Na", "K", "Rb"}) {
      const AtomSystem& atom = cat().atom(name);
      const CriticalPoint cp = critical_density(atom, he_template());
      for (int i = 0; i < 8; ++i) {
        const double p = *cp.pressure_torr * std::pow(10.0, 0.05 + 0.25 * i);
        const auto inv = inversion_threshold(p, atom, he_template());
        const auto awi = awi_threshold(p, atom, he_template());
        if (inv && awi) CHECK(*awi <= *inv * (1.0 + 1e-9));
      }
    }
  }
}

TEST_CASE("threshold curve and minimum") {
  const AtomSystem& k = cat().atom("K");

  SUBCASE("curve marks absences below the critical pressure") {
    const std::vector<double> ps{1.0, 2.0, 4.0, 8.0, 16.0};
    const ThresholdCurve inv =
        threshold_curve(ThresholdKind::inversion, k, he_template(), ps);
    CHECK_FALSE(inv.kappa0[0].has_value());  // 1 Torr, below critical
    CHECK(inv.kappa0[4].has_value());        // 16 Torr, above critical
  }

  SUBCASE("potassium minimum and its monotone flanks") {
    const ThresholdMinimum m =
        minimize_threshold(ThresholdKind::awi, k, he_template(), 0.3, 100.0);
    CHECK(m.kappa0_min > 92.0 / 2.0);
    CHECK(m.kappa0_min < 92.0 * 2.0);
    CHECK(m.pressure_torr > 3.1 / 2.0);
    CHECK(m.pressure_torr < 3.1 * 2.0);

    const auto low = awi_threshold(0.5 * m.pressure_torr, k, he_template());
    const auto high = awi_threshold(2.0 * m.pressure_torr, k, he_template());
    if (low) CHECK(*low >= m.kappa0_min);
    if (high) CHECK(*high >= m.kappa0_min);
  }

  SUBCASE("species ordering of the minima") {
    const ThresholdMinimum mk =
        minimize_threshold(ThresholdKind::awi, k, he_template(), 0.3, 100.0);
    const ThresholdMinimum mna = minimize_threshold(ThresholdKind::awi, cat().atom("Na"),
                                                    he_template(), 1.0, 300.0);
    const ThresholdMinimum mrb = minimize_threshold(ThresholdKind::awi, cat().atom("Rb"),
                                                    he_template(), 30.0, 3000.0);
    CHECK(mk.kappa0_min < mna.kappa0_min);
    CHECK(mna.kappa0_min < mrb.kappa0_min);
  }

  SUBCASE("no minimum when the curve is absent everywhere") {
    CHECK_THROWS_AS(minimize_threshold(ThresholdKind::inversion, cat().atom("Rb"),
                                       he_template(), 0.5, 5.0),
                    SearchError);
  }

  SUBCASE("searches are bit-deterministic") {
    const ThresholdMinimum a =
        minimize_threshold(ThresholdKind::awi, k, he_template(), 0.3, 100.0);
    const ThresholdMinimum b =
        minimize_threshold(ThresholdKind::awi, k, he_template(), 0.3, 100.0);
    CHECK(a.kappa0_min == b.kappa0_min);
    CHECK(a.pressure_torr == b.pressure_torr);
  }
}

TEST_CASE("gain optimization") {
  const AtomSystem& k = cat().atom("K");

  SUBCASE("potassium operating point") {
    GainSearchConfig cfg;
    cfg.p_lo_torr = 4.0;
    cfg.p_hi_torr = 60.0;
    cfg.n_pressure = 16;
    const OperatingPoint op = optimize_gain(k, he_template(), cfg);
    CHECK(op.peak_gain > 0.01 / 2.0);
    CHECK(op.peak_gain < 0.01 * 2.0);
    CHECK(op.kappa0 > 370.0 / 2.0);
    CHECK(op.kappa0 < 370.0 * 2.0);
    CHECK(op.pressure_torr > 16.0 / 2.0);
    CHECK(op.pressure_torr < 16.0 * 2.0);
    CHECK(op.pop_diff_13 > 0.0);
    CHECK(op.pop_diff_13 > 3e-5);
    CHECK(op.pop_diff_13 < 3e-3);
    CHECK(op.g == doctest::Approx(rabi_from_kappa0(op.kappa0, k.a21)));
  }

  SUBCASE("no gain in a collisionless sliver") {
    GainSearchConfig cfg;
    cfg.p_lo_torr = 1e-3;
    cfg.p_hi_torr = 3e-3;
    cfg.n_pressure = 4;
    CHECK_THROWS_AS(optimize_gain(k, he_template(), cfg), SearchError);
  }
}
