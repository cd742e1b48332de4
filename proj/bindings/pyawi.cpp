#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "awi/doppler.hpp"
#include "awi/threshold.hpp"
#include "awi/transient.hpp"
#include "awi/units.hpp"
#include "awi/validate.hpp"

namespace py = pybind11;
using namespace awi;

namespace {

std::vector<std::tuple<double, double, double>> samples_to_tuples(
    const std::vector<SpectrumSample>& samples) {
  std::vector<std::tuple<double, double, double>> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.emplace_back(s.delta_p, s.absorption(), s.dispersion());
  return out;
}

}  // namespace

PYBIND11_MODULE(pyawi, m) {
  m.doc() = "Collision-driven inversionless gain in alkali vapors";

  py::register_exception<Error>(m, "AwiError");

  py::class_<AtomSystem>(m, "AtomSystem")
      .def(py::init<>())
      .def_readwrite("name", &AtomSystem::name)
      .def_readwrite("lambda_probe_nm", &AtomSystem::lambda_probe_nm)
      .def_readwrite("lambda_drive_nm", &AtomSystem::lambda_drive_nm)
      .def_readwrite("A21", &AtomSystem::a21)
      .def_readwrite("A31", &AtomSystem::a31)
      .def_readwrite("delta_E_wavenumber", &AtomSystem::delta_e_wavenumber)
      .def_readwrite("mass_amu", &AtomSystem::mass_amu)
      .def_readwrite("g1", &AtomSystem::g1)
      .def_readwrite("g2", &AtomSystem::g2)
      .def_readwrite("g3", &AtomSystem::g3)
      .def_readwrite("sigma_23_A2", &AtomSystem::sigma_23_A2)
      .def_readwrite("sigma_32_A2", &AtomSystem::sigma_32_A2)
      .def_readwrite("sigma_b21_A2", &AtomSystem::sigma_b21_A2)
      .def_readwrite("sigma_b31_A2", &AtomSystem::sigma_b31_A2)
      .def("boltzmann_x", &AtomSystem::boltzmann_x)
      .def("validate", &AtomSystem::validate);

  py::class_<BathConditions>(m, "BathConditions")
      .def(py::init<>())
      .def_readwrite("buffer", &BathConditions::buffer)
      .def_readwrite("buffer_mass_amu", &BathConditions::buffer_mass_amu)
      .def_readwrite("pressure_torr", &BathConditions::pressure_torr)
      .def_readwrite("temperature_k", &BathConditions::temperature_k);

  py::class_<SpeciesCatalog>(m, "SpeciesCatalog")
      .def_static("load", &SpeciesCatalog::load)
      .def_static("parse", &SpeciesCatalog::parse)
      .def_static("builtin", []() { return SpeciesCatalog::parse(SpeciesCatalog::builtin_text()); })
      .def("atom", &SpeciesCatalog::atom, py::return_value_policy::copy)
      .def("buffer_mass_amu", &SpeciesCatalog::buffer_mass_amu)
      .def("species_names", &SpeciesCatalog::species_names)
      .def("buffer_names", &SpeciesCatalog::buffer_names)
      .def("make_bath", &SpeciesCatalog::make_bath)
      .def("serialize", &SpeciesCatalog::serialize)
      .def("save", &SpeciesCatalog::save);

  py::class_<DriveField>(m, "DriveField")
      .def(py::init<>())
      .def(py::init([](double g, double delta) {
             return DriveField{g, delta};
           }),
           py::arg("g"), py::arg("delta") = 0.0)
      .def_readwrite("g", &DriveField::g)
      .def_readwrite("delta", &DriveField::delta);

  py::class_<RateSet>(m, "RateSet")
      .def(py::init<>())
      .def_readwrite("gamma2", &RateSet::gamma2)
      .def_readwrite("gamma3", &RateSet::gamma3)
      .def_readwrite("gamma21", &RateSet::gamma21)
      .def_readwrite("gamma31", &RateSet::gamma31)
      .def_readwrite("gamma32", &RateSet::gamma32)
      .def_readwrite("w23", &RateSet::w23)
      .def_readwrite("w32", &RateSet::w32)
      .def_readwrite("A21", &RateSet::a21)
      .def_readwrite("A31", &RateSet::a31);

  py::class_<PopulationState>(m, "PopulationState")
      .def(py::init<>())
      .def_readwrite("r1", &PopulationState::r1)
      .def_readwrite("r2", &PopulationState::r2)
      .def_readwrite("r3", &PopulationState::r3)
      .def("sum", &PopulationState::sum)
      .def("diff12", &PopulationState::diff12)
      .def("diff13", &PopulationState::diff13);

  py::class_<DegeneratePopulations>(m, "DegeneratePopulations")
      .def_readonly("R1", &DegeneratePopulations::R1)
      .def_readonly("R2", &DegeneratePopulations::R2)
      .def_readonly("R3", &DegeneratePopulations::R3)
      .def("per_sublevel", &DegeneratePopulations::per_sublevel)
      .def("diff12", &DegeneratePopulations::diff12)
      .def("diff13", &DegeneratePopulations::diff13);

  py::class_<OperatingPoint>(m, "OperatingPoint")
      .def_readonly("pressure_torr", &OperatingPoint::pressure_torr)
      .def_readonly("kappa0", &OperatingPoint::kappa0)
      .def_readonly("g", &OperatingPoint::g)
      .def_readonly("peak_gain", &OperatingPoint::peak_gain)
      .def_readonly("pop_diff_13", &OperatingPoint::pop_diff_13)
      .def_readonly("delta_p_at_peak", &OperatingPoint::delta_p_at_peak);

  py::class_<ThresholdMinimum>(m, "ThresholdMinimum")
      .def_readonly("kappa0_min", &ThresholdMinimum::kappa0_min)
      .def_readonly("pressure_torr", &ThresholdMinimum::pressure_torr);

  m.def("energy_from_wavenumber", &units::energy_from_wavenumber);
  m.def("pressure_to_pascal", &units::pressure_to_pascal);

  m.def("number_density_cm3", &number_density_cm3);
  m.def("mean_relative_speed_cm_s", &mean_relative_speed_cm_s);
  m.def("build_rate_set", &build_rate_set, py::arg("atom"), py::arg("bath"),
        py::arg("chi_raman") = 0.0);
  m.def("saturation_kappa", &saturation_kappa);
  m.def("kappa_prime", &kappa_prime);
  m.def("kappa0_collisionless", &kappa0_collisionless);
  m.def("rabi_from_kappa0", &rabi_from_kappa0);
  m.def("rabi_from_intensity", &rabi_from_intensity);
  m.def("saturation_intensity_w_cm2", &saturation_intensity_w_cm2);

  m.def("populations_nondegenerate", &populations_nondegenerate);
  m.def("populations_degenerate", &populations_degenerate, py::arg("kappa"),
        py::arg("rates"), py::arg("g1") = 2, py::arg("g2") = 4, py::arg("g3") = 2);
  m.def("kappa_prime_degenerate", &kappa_prime_degenerate, py::arg("kappa"),
        py::arg("rates"), py::arg("g1") = 2, py::arg("g2") = 4, py::arg("g3") = 2);
  m.def("susceptibility", &susceptibility);
  m.def("resonant_f", &resonant_f);
  m.def("awi_predicate", &awi_predicate);
  m.def("s_parameter", &s_parameter);
  m.def(
      "sum_rule_residual",
      [](const DriveField& drive, const RateSet& rates, const PopulationState& pops) {
        return sum_rule_residual(drive, rates, pops, {});
      },
      py::arg("drive"), py::arg("rates"), py::arg("pops"));
  m.def(
      "spectrum_scan",
      [](const std::vector<double>& grid, const DriveField& drive, const RateSet& rates,
         const PopulationState& pops) {
        return samples_to_tuples(spectrum_scan(grid, drive, rates, pops));
      },
      "Returns (delta_p, Im f, Re f) tuples");

  m.def("doppler_halfwidth", &doppler_halfwidth);
  m.def(
      "velocity_average",
      [](const std::vector<double>& grid, const DriveField& drive, const RateSet& rates,
         const AtomSystem& atom, const BathConditions& bath, int n_nodes) {
        const DopplerConfig cfg = make_doppler_config(atom, bath, n_nodes);
        return samples_to_tuples(velocity_average(grid, drive, rates, atom, cfg));
      },
      py::arg("grid"), py::arg("drive"), py::arg("rates"), py::arg("atom"),
      py::arg("bath"), py::arg("n_nodes") = 64);

  m.def(
      "linear_response_f",
      [](double delta_p, const DriveField& drive, const RateSet& rates) {
        return linear_response_f(delta_p, drive, rates);
      },
      py::arg("delta_p"), py::arg("drive"), py::arg("rates"));

  m.def(
      "inversion_threshold",
      [](double p, const AtomSystem& atom, const BathConditions& tmpl, double chi) {
        return inversion_threshold(p, atom, tmpl, chi);
      },
      py::arg("pressure_torr"), py::arg("atom"), py::arg("bath_template"),
      py::arg("chi_raman") = 0.0);
  m.def(
      "awi_threshold",
      [](double p, const AtomSystem& atom, const BathConditions& tmpl, double chi) {
        return awi_threshold(p, atom, tmpl, chi);
      },
      py::arg("pressure_torr"), py::arg("atom"), py::arg("bath_template"),
      py::arg("chi_raman") = 0.0);
  m.def(
      "minimize_awi_threshold",
      [](const AtomSystem& atom, const BathConditions& tmpl, double p_lo, double p_hi,
         double chi) {
        return minimize_threshold(ThresholdKind::awi, atom, tmpl, p_lo, p_hi, chi);
      },
      py::arg("atom"), py::arg("bath_template"), py::arg("p_lo_torr"),
      py::arg("p_hi_torr"), py::arg("chi_raman") = 0.0);
  m.def(
      "critical_pressure_torr",
      [](const AtomSystem& atom, const BathConditions& tmpl) {
        return critical_density(atom, tmpl).pressure_torr;
      });
  m.def(
      "optimize_gain",
      [](const AtomSystem& atom, const BathConditions& tmpl, double p_lo, double p_hi,
         double chi) {
        GainSearchConfig cfg;
        cfg.p_lo_torr = p_lo;
        cfg.p_hi_torr = p_hi;
        cfg.chi_raman = chi;
        return optimize_gain(atom, tmpl, cfg);
      },
      py::arg("atom"), py::arg("bath_template"), py::arg("p_lo_torr") = 1.0,
      py::arg("p_hi_torr") = 4000.0, py::arg("chi_raman") = 0.0);

  m.def("run_validation", [](const SpeciesCatalog& cat) {
    std::vector<std::tuple<std::string, bool, std::string>> out;
    for (const auto& r : run_validation(cat)) out.emplace_back(r.name, r.passed, r.detail);
    return out;
  });
}
