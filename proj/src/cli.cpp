#include "awi/cli.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "awi/doppler.hpp"
#include "awi/output.hpp"
#include "awi/threshold.hpp"
#include "awi/validate.hpp"

namespace awi {

namespace {

struct CommonOpts {
  std::string species = "Na";
  std::string buffer = "He";
  double pressure_torr = 1.0;
  double temperature_k = 550.0;
  std::optional<double> kappa0;
  std::optional<double> rabi;
  std::optional<double> intensity;
  double delta = 0.0;  // rad/s
  double scan_min = -25.0, scan_max = 25.0;  // units of Gamma31
  int scan_n = 1001;
  int nodes = 64;
  bool doppler = false;  // velocity-average within `spectrum`
  double chi_raman = 0.0;
  std::string catalog_path;
  std::string out_dir = ".";
  bool plot = false;
};

SpeciesCatalog load_catalog_opt(const CommonOpts& o) {
  if (!o.catalog_path.empty()) return SpeciesCatalog::load(o.catalog_path);
  return SpeciesCatalog::parse(SpeciesCatalog::builtin_text());
}

double resolve_rabi(const CommonOpts& o, const AtomSystem& atom) {
  const int given = int(o.kappa0.has_value()) + int(o.rabi.has_value()) +
                    int(o.intensity.has_value());
  if (given != 1) {
    throw ValidationError("exactly one of --kappa0, --rabi, --intensity must be given");
  }
  if (o.kappa0) return rabi_from_kappa0(*o.kappa0, atom.a21);
  if (o.rabi) {
    if (*o.rabi < 0) throw ValidationError("--rabi must be >= 0");
    return *o.rabi;
  }
  return rabi_from_intensity(*o.intensity, atom);
}

void add_common(CLI::App* cmd, CommonOpts& o, bool with_drive, bool with_scan) {
  cmd->add_option("--species", o.species, "Alkali species name (catalog key)");
  cmd->add_option("--buffer", o.buffer, "Buffer gas name (catalog key)");
  cmd->add_option("--temperature-k", o.temperature_k, "Vapor temperature, K");
  if (with_drive) {
    cmd->add_option("--pressure-torr", o.pressure_torr, "Buffer gas pressure, Torr")
        ->required();
    cmd->add_option("--kappa0", o.kappa0,
                    "Collisionless resonant saturation parameter 4|g|^2/A21^2");
    cmd->add_option("--rabi", o.rabi, "Drive Rabi frequency |g|, rad/s");
    cmd->add_option("--intensity", o.intensity, "Drive intensity, W/cm^2");
    cmd->add_option("--delta", o.delta, "Drive detuning, rad/s");
  }
  if (with_scan) {
    cmd->add_option("--scan-min", o.scan_min, "Probe scan start, units of Gamma31");
    cmd->add_option("--scan-max", o.scan_max, "Probe scan end, units of Gamma31");
    cmd->add_option("--scan-n", o.scan_n, "Probe scan point count");
  }
  cmd->add_option("--chi-raman", o.chi_raman, "Extra Raman dephasing multiplier");
  cmd->add_option("--catalog", o.catalog_path, "Species catalog file (default: built-in)");
  cmd->add_option("--out", o.out_dir, "Output directory");
  cmd->add_flag("--plot", o.plot, "Also write an SVG chart per CSV");
}

std::vector<double> make_grid(const CommonOpts& o, double gamma31) {
  if (o.scan_n < 2) throw ValidationError("--scan-n must be at least 2");
  if (!(o.scan_max > o.scan_min) || !std::isfinite(o.scan_min) ||
      !std::isfinite(o.scan_max)) {
    throw ValidationError("scan range must be finite with --scan-min < --scan-max");
  }
  std::vector<double> grid(o.scan_n);
  for (int i = 0; i < o.scan_n; ++i) {
    grid[i] = (o.scan_min + (o.scan_max - o.scan_min) * i / (o.scan_n - 1)) * gamma31;
  }
  return grid;
}

std::string out_path(const CommonOpts& o, const std::string& name) {
  std::filesystem::create_directories(o.out_dir);
  return (std::filesystem::path(o.out_dir) / name).string();
}

void header_common(CsvFile& csv, const CommonOpts& o, const DegenerateModelPoint& pt) {
  csv.header("species", o.species);
  csv.header("buffer", o.buffer);
  csv.header("pressure_torr", o.pressure_torr);
  csv.header("temperature_k", o.temperature_k);
  csv.header("chi_raman", o.chi_raman);
  csv.header("catalog", o.catalog_path.empty() ? "builtin" : o.catalog_path);
  csv.header("g_rad_s", pt.drive.g);
  csv.header("delta_rad_s", pt.drive.delta);
  csv.header("kappa", pt.kappa);
  csv.header("kappa_prime_degenerate", pt.kprime);
  csv.header("s_parameter", pt.s_param);
  csv.header("gamma2", pt.rates.gamma2);
  csv.header("gamma3", pt.rates.gamma3);
  csv.header("gamma21", pt.rates.gamma21);
  csv.header("gamma31", pt.rates.gamma31);
  csv.header("gamma32", pt.rates.gamma32);
  csv.header("w23", pt.rates.w23);
  csv.header("w32", pt.rates.w32);
  csv.header("A21", pt.rates.a21);
  csv.header("A31", pt.rates.a31);
  csv.header("R1", pt.pops.R1);
  csv.header("R2", pt.pops.R2);
  csv.header("R3", pt.pops.R3);
  csv.header("diff12_sublevel", pt.pops.diff12());
  csv.header("diff13_sublevel", pt.pops.diff13());
  csv.header("norm", pt.norm);
}

void maybe_plot_spectrum(const CommonOpts& o, const std::string& name,
                         const std::vector<SpectrumSample>& samples, double gamma31) {
  if (!o.plot) return;
  SvgSeries im{"Im f", {}}, re{"Re f", {}};
  for (const auto& s : samples) {
    im.points.push_back({s.delta_p / gamma31, s.absorption()});
    re.points.push_back({s.delta_p / gamma31, s.dispersion()});
  }
  write_svg_chart(out_path(o, name), o.species + " probe spectrum",
                  "delta_p / Gamma31", "normalized index", {im, re});
}

int cmd_doppler(const CommonOpts& o);

int cmd_spectrum(const CommonOpts& o) {
  if (o.doppler) return cmd_doppler(o);
  const SpeciesCatalog cat = load_catalog_opt(o);
  const AtomSystem& atom = cat.atom(o.species);
  const BathConditions bath = cat.make_bath(o.buffer, o.pressure_torr, o.temperature_k);
  const DriveField drive{resolve_rabi(o, atom), o.delta};
  const DegenerateModelPoint pt = eval_degenerate_model(atom, bath, drive, o.chi_raman);
  const std::vector<double> grid = make_grid(o, pt.rates.gamma31);
  const auto samples = scan_normalized(pt, grid);

  CsvFile csv;
  csv.header("tool", "awi spectrum");
  header_common(csv, o, pt);
  csv.header("kappa0", kappa0_collisionless(drive.g, atom.a21));
  csv.header("scan_min_gamma31", o.scan_min);
  csv.header("scan_max_gamma31", o.scan_max);
  csv.header("scan_n", static_cast<double>(o.scan_n));
  csv.columns({"delta_p_over_Gamma31", "Im_f", "Re_f"});
  for (const auto& s : samples) {
    csv.row_values({s.delta_p / pt.rates.gamma31, s.absorption(), s.dispersion()});
  }
  csv.write(out_path(o, "spectrum.csv"));
  maybe_plot_spectrum(o, "spectrum.svg", samples, pt.rates.gamma31);

  double min_im = samples.empty() ? 0.0 : samples.front().absorption();
  for (const auto& s : samples) min_im = std::min(min_im, s.absorption());
  std::cout << "spectrum: " << samples.size() << " points, min Im f = "
            << format_sci(min_im) << "\n";
  return 0;
}

int cmd_doppler(const CommonOpts& o) {
  const SpeciesCatalog cat = load_catalog_opt(o);
  const AtomSystem& atom = cat.atom(o.species);
  const BathConditions bath = cat.make_bath(o.buffer, o.pressure_torr, o.temperature_k);
  const DriveField drive{resolve_rabi(o, atom), o.delta};
  const DegenerateModelPoint pt = eval_degenerate_model(atom, bath, drive, o.chi_raman);
  const DopplerConfig cfg = make_doppler_config(atom, bath, o.nodes);

  if (pt.rates.gamma21 >= cfg.halfwidth) {
    std::cerr << "warning: Gamma21 = " << format_sci(pt.rates.gamma21)
              << " rad/s exceeds the Doppler halfwidth " << format_sci(cfg.halfwidth)
              << " rad/s; the line is homogeneously broadened and averaging is "
                 "unnecessary\n";
  }

  const std::vector<double> grid = make_grid(o, pt.rates.gamma31);
  const auto samples = velocity_average(grid, drive, pt.rates, atom, cfg);

  CsvFile csv;
  csv.header("tool", "awi doppler");
  header_common(csv, o, pt);
  csv.header("kappa0", kappa0_collisionless(drive.g, atom.a21));
  csv.header("doppler_halfwidth_rad_s", cfg.halfwidth);
  csv.header("doppler_nodes", static_cast<double>(cfg.n_nodes));
  csv.header("k_ratio", cfg.k_ratio);
  csv.header("copropagating", cfg.copropagating ? "true" : "false");
  csv.header("scan_min_gamma31", o.scan_min);
  csv.header("scan_max_gamma31", o.scan_max);
  csv.header("scan_n", static_cast<double>(o.scan_n));
  csv.columns({"delta_p_over_Gamma31", "Im_f", "Re_f"});
  for (const auto& s : samples) {
    csv.row_values({s.delta_p / pt.rates.gamma31, s.absorption(), s.dispersion()});
  }
  csv.write(out_path(o, "doppler.csv"));
  maybe_plot_spectrum(o, "doppler.svg", samples, pt.rates.gamma31);

  double min_im = samples.empty() ? 0.0 : samples.front().absorption();
  for (const auto& s : samples) min_im = std::min(min_im, s.absorption());
  std::cout << "doppler: " << samples.size() << " points, min Im f = "
            << format_sci(min_im) << "\n";
  return 0;
}

int cmd_populations(const CommonOpts& o) {
  const SpeciesCatalog cat = load_catalog_opt(o);
  const AtomSystem& atom = cat.atom(o.species);
  const BathConditions bath = cat.make_bath(o.buffer, o.pressure_torr, o.temperature_k);
  const DriveField drive{resolve_rabi(o, atom), o.delta};
  const DegenerateModelPoint pt = eval_degenerate_model(atom, bath, drive, o.chi_raman);

  const double kappa = pt.kappa;
  const double kp_nondeg = kappa_prime(kappa, pt.rates);
  const PopulationState nd = populations_nondegenerate(kp_nondeg, pt.rates);
  const HighPressureResult hp = populations_high_pressure(
      drive, pt.rates.gamma21, pt.rates.a21, atom.boltzmann_x(bath.temperature_k));

  CsvFile csv;
  csv.header("tool", "awi populations");
  header_common(csv, o, pt);
  csv.header("kappa0", kappa0_collisionless(drive.g, atom.a21));
  csv.header("kappa_prime_nondegenerate", kp_nondeg);
  csv.header("kappa_prime_high_pressure", hp.kprime);
  csv.columns({"model", "r1", "r2", "r3", "sum", "diff12", "diff13", "kappa_prime"});
  csv.row({"nondegenerate", format_sci(nd.r1), format_sci(nd.r2), format_sci(nd.r3),
           format_sci(nd.sum()), format_sci(nd.diff12()), format_sci(nd.diff13()),
           format_sci(kp_nondeg)});
  csv.row({"high_pressure", "nan", "nan", "nan", "nan", "nan",
           format_sci(hp.r1_minus_r3), format_sci(hp.kprime)});
  csv.row({"degenerate_levels", format_sci(pt.pops.R1), format_sci(pt.pops.R2),
           format_sci(pt.pops.R3), format_sci(pt.pops.sum()),
           format_sci(pt.pops.diff12()), format_sci(pt.pops.diff13()),
           format_sci(pt.kprime)});
  csv.write(out_path(o, "populations.csv"));

  std::cout << csv.text();
  return 0;
}

struct ThresholdOpts {
  double p_min = 0.5;
  double p_max = 2000.0;
  int p_n = 60;
};

int cmd_thresholds(const CommonOpts& o, const ThresholdOpts& t) {
  if (!(t.p_min > 0) || !(t.p_max > t.p_min) || t.p_n < 2) {
    throw ValidationError("thresholds: need 0 < --p-min < --p-max and --p-n >= 2");
  }
  const SpeciesCatalog cat = load_catalog_opt(o);
  const AtomSystem& atom = cat.atom(o.species);
  const BathConditions tmpl = cat.make_bath(o.buffer, 0.0, o.temperature_k);

  std::vector<double> pressures(t.p_n);
  for (int i = 0; i < t.p_n; ++i) {
    pressures[i] = std::exp(std::log(t.p_min) +
                            (std::log(t.p_max) - std::log(t.p_min)) * i / (t.p_n - 1));
  }
  const ThresholdCurve inv =
      threshold_curve(ThresholdKind::inversion, atom, tmpl, pressures, o.chi_raman);
  const ThresholdCurve awi =
      threshold_curve(ThresholdKind::awi, atom, tmpl, pressures, o.chi_raman);

  CsvFile csv;
  csv.header("tool", "awi thresholds");
  csv.header("species", o.species);
  csv.header("buffer", o.buffer);
  csv.header("temperature_k", o.temperature_k);
  csv.header("chi_raman", o.chi_raman);
  csv.header("catalog", o.catalog_path.empty() ? "builtin" : o.catalog_path);
  csv.header("p_min_torr", t.p_min);
  csv.header("p_max_torr", t.p_max);
  csv.header("p_n", static_cast<double>(t.p_n));

  const CriticalPoint cp = critical_density(atom, tmpl);
  if (cp.density_cm3) {
    csv.header("critical_density_cm3", *cp.density_cm3);
    csv.header("critical_pressure_torr", *cp.pressure_torr);
  } else {
    csv.header("critical_density_cm3", "none");
  }

  const auto summarize = [&](ThresholdKind kind, const std::string& label) {
    try {
      const ThresholdMinimum m =
          minimize_threshold(kind, atom, tmpl, t.p_min, t.p_max, o.chi_raman);
      csv.header(label + "_minimum_kappa0", m.kappa0_min);
      csv.header(label + "_minimum_pressure_torr", m.pressure_torr);
      std::cout << label << " minimum: kappa0 = " << format_sci(m.kappa0_min)
                << " at P = " << format_sci(m.pressure_torr) << " Torr\n";
    } catch (const SearchError&) {
      csv.header(label + "_minimum_kappa0", "absent");
      std::cout << label << " minimum: absent in range\n";
    }
  };
  summarize(ThresholdKind::awi, "awi");
  summarize(ThresholdKind::inversion, "inversion");

  csv.columns({"pressure_torr", "kappa0_inversion", "inversion_present", "kappa0_awi",
               "awi_present"});
  for (int i = 0; i < t.p_n; ++i) {
    csv.row({format_sci(pressures[i]),
             inv.kappa0[i] ? format_sci(*inv.kappa0[i]) : "nan",
             inv.kappa0[i] ? "1" : "0",
             awi.kappa0[i] ? format_sci(*awi.kappa0[i]) : "nan",
             awi.kappa0[i] ? "1" : "0"});
  }
  csv.write(out_path(o, "thresholds.csv"));

  if (o.plot) {
    SvgSeries a{"inversion", {}}, b{"awi", {}};
    for (int i = 0; i < t.p_n; ++i) {
      if (inv.kappa0[i]) a.points.push_back({pressures[i], *inv.kappa0[i]});
      if (awi.kappa0[i]) b.points.push_back({pressures[i], *awi.kappa0[i]});
    }
    write_svg_chart(out_path(o, "thresholds.svg"),
                    o.species + " threshold saturation parameter", "pressure, Torr",
                    "kappa0", {a, b}, /*log_y=*/true);
  }
  return 0;
}

int cmd_validate(const CommonOpts& o) {
  const SpeciesCatalog cat = load_catalog_opt(o);
  ValidateOptions vo;
  vo.chi_raman = o.chi_raman;
  const auto results = run_validation(cat, vo);
  int failures = 0;
  for (const auto& r : results) {
    std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail
              << "\n";
    if (!r.passed) ++failures;
  }
  std::cout << (failures == 0 ? "validation passed" : "validation FAILED") << " ("
            << results.size() - failures << "/" << results.size() << " checks)\n";
  return failures == 0 ? 0 : 3;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Collision-driven inversionless gain in alkali vapors"};
  app.require_subcommand(1);

  CommonOpts o;
  ThresholdOpts t;

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "Probe absorption/dispersion line shape at fixed conditions");
  add_common(spectrum, o, true, true);
  spectrum->add_flag("--doppler", o.doppler,
                     "Velocity-average the spectrum (same output as `doppler`)");
  spectrum->add_option("--nodes", o.nodes, "Gauss-Hermite velocity node count");

  CLI::App* doppler = app.add_subcommand(
      "doppler", "Velocity-averaged probe spectrum (inhomogeneous broadening)");
  add_common(doppler, o, true, true);
  doppler->add_option("--nodes", o.nodes, "Gauss-Hermite velocity node count");

  CLI::App* populations = app.add_subcommand(
      "populations", "Steady-state populations of all three models");
  add_common(populations, o, true, false);

  CLI::App* thresholds = app.add_subcommand(
      "thresholds", "Inversion and AWI threshold curves over pressure");
  add_common(thresholds, o, false, false);
  thresholds->add_option("--p-min", t.p_min, "Pressure scan start, Torr");
  thresholds->add_option("--p-max", t.p_max, "Pressure scan end, Torr");
  thresholds->add_option("--p-n", t.p_n, "Pressure scan point count");

  CLI::App* validate = app.add_subcommand(
      "validate", "Run the internal oracle suite (sum rule, transient, thresholds)");
  add_common(validate, o, false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (spectrum->parsed()) return cmd_spectrum(o);
    if (doppler->parsed()) return cmd_doppler(o);
    if (populations->parsed()) return cmd_populations(o);
    if (thresholds->parsed()) return cmd_thresholds(o, t);
    if (validate->parsed()) return cmd_validate(o);
  } catch (const ConvergenceError& e) {
    std::cerr << "error (numerical): " << e.what() << "\n";
    return 2;
  } catch (const SearchError& e) {
    std::cerr << "error (numerical): " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace awi
