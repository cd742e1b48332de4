"""Smoke tests for the pyawi extension module."""

import math

import pytest

pyawi = pytest.importorskip("pyawi")


@pytest.fixture(scope="module")
def catalog():
    return pyawi.SpeciesCatalog.builtin()


def test_catalog_contents(catalog):
    assert set(catalog.species_names()) == {"Na", "K", "Rb"}
    na = catalog.atom("Na")
    assert na.sigma_23_A2 == 41.1
    assert catalog.atom("Rb").sigma_23_A2 == 0.12
    with pytest.raises(pyawi.AwiError):
        catalog.atom("Cs")


def test_unit_conversions():
    assert pyawi.pressure_to_pascal(760.0) == pytest.approx(101325.0, rel=1e-4)
    assert pyawi.energy_from_wavenumber(1.0) == pytest.approx(1.9864e-23, rel=1e-4)


def test_rates_and_populations(catalog):
    atom = catalog.atom("K")
    bath = catalog.make_bath("He", 3.1, 550.0)
    rates = pyawi.build_rate_set(atom, bath)
    assert rates.gamma2 == pytest.approx(rates.A21 + rates.w23, rel=1e-14)

    drive = pyawi.DriveField(g=pyawi.rabi_from_kappa0(92.0, atom.A21), delta=0.0)
    kappa = pyawi.saturation_kappa(drive, rates)
    pops = pyawi.populations_degenerate(kappa, rates)
    assert pops.R1 == pytest.approx(0.28, abs=0.05)
    assert pops.R2 == pytest.approx(0.50, abs=0.05)
    assert pops.R3 == pytest.approx(0.22, abs=0.05)
    assert pops.R1 + pops.R2 + pops.R3 == pytest.approx(1.0, abs=1e-12)


def test_lorentzian_susceptibility(catalog):
    atom = catalog.atom("Na")
    bath = catalog.make_bath("He", 100.0, 550.0)
    rates = pyawi.build_rate_set(atom, bath)
    off = pyawi.DriveField(g=0.0)
    ground = pyawi.PopulationState()
    f0 = pyawi.susceptibility(0.0, off, rates, ground)
    assert f0.imag == pytest.approx(1.0, abs=1e-12)
    fw = pyawi.susceptibility(rates.gamma31, off, rates, ground)
    assert fw.imag == pytest.approx(0.5, abs=1e-12)
    assert pyawi.sum_rule_residual(off, rates, ground) < 1e-6


def test_awi_threshold_minimum(catalog):
    atom = catalog.atom("K")
    tmpl = catalog.make_bath("He", 0.0, 550.0)
    m = pyawi.minimize_awi_threshold(atom, tmpl, 0.3, 100.0)
    assert 92.0 / 2 < m.kappa0_min < 92.0 * 2
    assert 3.1 / 2 < m.pressure_torr < 3.1 * 2

    p_crit = pyawi.critical_pressure_torr(atom, tmpl)
    assert p_crit is not None
    assert pyawi.inversion_threshold(0.9 * p_crit, atom, tmpl) is None
    assert pyawi.inversion_threshold(1.1 * p_crit, atom, tmpl) is not None


def test_doppler_halfwidth(catalog):
    hw = pyawi.doppler_halfwidth(catalog.atom("Na"), 550.0, 589e-9)
    assert hw == pytest.approx(5.6e9, rel=0.05)


def test_velocity_average_gain(catalog):
    atom = catalog.atom("K")
    bath = catalog.make_bath("He", 16.0, 550.0)
    rates = pyawi.build_rate_set(atom, bath)
    drive = pyawi.DriveField(g=pyawi.rabi_from_kappa0(3400.0, atom.A21))
    hw = pyawi.doppler_halfwidth(atom, 550.0, atom.lambda_probe_nm * 1e-9)
    grid = [(-5.0 + 10.0 * i / 400) * hw for i in range(401)]
    samples = pyawi.velocity_average(grid, drive, rates, atom, bath, 256)
    min_im = min(s[1] for s in samples)
    assert min_im < 0.0


def test_linear_response_matches_susceptibility(catalog):
    atom = catalog.atom("Na")
    bath = catalog.make_bath("He", 50.0, 550.0)
    rates = pyawi.build_rate_set(atom, bath)
    drive = pyawi.DriveField(g=5e8, delta=2e8)
    kappa = pyawi.saturation_kappa(drive, rates)
    pops = pyawi.populations_nondegenerate(pyawi.kappa_prime(kappa, rates), rates)
    f_closed = pyawi.susceptibility(0.4 * rates.gamma31, drive, rates, pops)
    f_ode = pyawi.linear_response_f(0.4 * rates.gamma31, drive, rates)
    assert abs(f_ode - f_closed) / abs(f_closed) < 1e-4


def test_spectrum_scan_shape(catalog):
    atom = catalog.atom("Na")
    bath = catalog.make_bath("He", 170.0, 550.0)
    rates = pyawi.build_rate_set(atom, bath)
    drive = pyawi.DriveField(g=2.9e9)
    kappa = pyawi.saturation_kappa(drive, rates)
    pops = pyawi.populations_degenerate(kappa, rates).per_sublevel()
    grid = [(-25.0 + 50.0 * i / 1500) * rates.gamma31 for i in range(1501)]
    samples = pyawi.spectrum_scan(grid, drive, rates, pops)
    assert len(samples) == 1501
    # normalized by the drive-off per-sublevel peak (1/g1)
    min_im = min(s[1] for s in samples) * atom.g1
    assert -0.004 < min_im < -0.001
