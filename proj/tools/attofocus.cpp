// Command-line front end: configuration-driven figure data, scans and oracle runs.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "attofocus/config.hpp"
#include "attofocus/constants.hpp"
#include "attofocus/errors.hpp"
#include "attofocus/excitation.hpp"
#include "attofocus/focal.hpp"
#include "attofocus/radial_curve.hpp"
#include "attofocus/scenario.hpp"
#include "attofocus/simd/harmonic.hpp"
#include "json.hpp"

namespace af = attofocus;
using json = nlohmann::ordered_json;

namespace {

struct Globals {
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<double> grid_scale;
};

af::ScenarioConfig load(const Globals& g) {
  af::ScenarioConfig cfg = g.config_path.empty() ? af::parse_config("") : af::load_config(g.config_path);
  if (g.grid_scale) {
    if (!(*g.grid_scale > 0.0)) throw af::ConfigError("--grid-scale must be positive");
    cfg.grid_scale *= *g.grid_scale;
  }
  return cfg;
}

// --out, then ATTOFOCUS_OUTPUT_DIR, then the config file.
std::string output_dir(const Globals& g, const af::ScenarioConfig& cfg) {
  if (g.out_dir) return *g.out_dir;
  if (const char* env = std::getenv("ATTOFOCUS_OUTPUT_DIR"); env && *env) return env;
  return cfg.output_dir;
}

std::pair<double, double> parse_pair(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw af::ConfigError("--pair expects 'gamma_over_omega0,eta', got '" + s + "'");
  try {
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw af::ConfigError("--pair expects two numbers, got '" + s + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Focal-spot resolution and two-level excitation by ultrashort pulse trains"};
  app.footer("\n" + af::config_format_help() +
             "\nEnvironment: ATTOFOCUS_OUTPUT_DIR overrides output_dir (--out overrides both);"
             " ATTOFOCUS_ISA=scalar|avx2 selects the kernel variant.\n"
             "Exit codes: 0 success, 2 config or usage error, 3 numerical error, 4 regime violation.");
  Globals g;
  app.add_option("--config", g.config_path, "Scenario config file (defaults apply when omitted)");
  app.add_option("--out", g.out_dir, "Output directory");
  app.add_option("--grid-scale", g.grid_scale, "Multiply all default grid densities");
  app.require_subcommand(1, 1);

  auto* spectrum = app.add_subcommand("spectrum", "Spectral normalisation and mean frequency (JSON on stdout)");

  double focus_rho = 0.0;
  auto* focus = app.add_subcommand("focus", "Focal field and intensity resolution at one radius (JSON on stdout)");
  focus->add_option("--rho", focus_rho, "Radius in metres")->capture_default_str();

  auto* resolve = app.add_subcommand("resolve", "Intensity and excitation resolution curves (CSV) and spot sizes");

  double excite_rho = 0.0;
  auto* excite = app.add_subcommand("excite", "Weak-field excitation probability at one radius (JSON on stdout)");
  excite->add_option("--rho", excite_rho, "Radius in metres")->capture_default_str();

  auto* scenario = app.add_subcommand("scenario", "Full scenario: report.json and both resolution curves");

  std::string figure_id;
  auto* figure = app.add_subcommand("figure", "Figure data as CSV");
  figure->add_option("id", figure_id, "1b, 1c, 1c-inset or 1d")->required();

  std::string scan_param;
  std::vector<double> scan_values;
  auto* scan = app.add_subcommand("scan", "Parameter scan as CSV");
  scan->add_option("parameter", scan_param,
                   "pulse_energy_J, numerical_aperture, spectral_width_rad_per_s, pulse_count or period_s")
      ->required();
  scan->add_option("values", scan_values, "Values to scan, in order")->required();

  std::vector<std::string> pairs;
  int oracle_pulses = 1;
  auto* oracle = app.add_subcommand("oracle", "Brute-force dynamics against the weak-field formula (CSV)");
  oracle->add_option("--pair", pairs, "gamma_over_omega0,eta (repeatable; default 3,0.05 10,0.05 30,0.05)");
  oracle->add_option("--pulses", oracle_pulses, "Pulses per train")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const af::ScenarioConfig cfg = load(g);
    const std::string out = output_dir(g, cfg);

    if (*spectrum) {
      const af::PulseSpectrum s = cfg.spectrum();
      json j{{"carrier_frequency_rad_per_s", s.carrier_frequency()},
             {"spectral_width_rad_per_s", s.spectral_width()},
             {"normalization", s.normalization()},
             {"mean_frequency_rad_per_s", s.mean_frequency()},
             {"mean_wavelength_m", s.mean_wavelength()},
             {"mean_frequency_over_carrier", s.mean_frequency() / s.carrier_frequency()}};
      std::cout << j.dump(2) << '\n';
    } else if (*focus) {
      const af::PulseSpectrum s = cfg.spectrum();
      const af::FocusingGeometry geo = cfg.geometry();
      const double energy = cfg.pulse_energy();
      json j{{"rho_m", focus_rho},
             {"a_rho_over_lambda_bar", geo.numerical_aperture() * focus_rho / s.mean_wavelength()},
             {"field_at_rephasing_V_per_m", af::focal_field_time(geo, s, energy, focus_rho, af::rephasing_time(geo))},
             {"intensity_resolution", af::intensity_resolution(geo, s, focus_rho)},
             {"spot_size_intensity_m",
              af::intensity_spot_size(geo, s, 0.5, static_cast<std::size_t>(cfg.radial_points),
                                      cfg.radial_max_over_lambda)}};
      std::cout << j.dump(2) << '\n';
    } else if (*resolve) {
      const af::PulseSpectrum s = cfg.spectrum();
      const af::FocusingGeometry geo = cfg.geometry();
      const af::TwoLevelSystem tls = cfg.two_level_system();
      const double max_rho = cfg.radial_max_over_lambda * s.mean_wavelength() / geo.numerical_aperture();
      const auto radii = af::radial_grid(max_rho, static_cast<std::size_t>(cfg.radial_points));
      const af::IntensityProfile prof(geo, s, max_rho);
      const af::RadialCurve ci = af::intensity_resolution_curve(geo, s, radii);
      const af::ExcitationModel model(cfg.train(), tls, geo, s, cfg.numerics());
      const af::RadialCurve ce = af::excitation_resolution_curve(model, radii);
      af::write_output(out, "intensity_resolution.csv", ci.to_csv());
      af::write_output(out, "excitation_resolution.csv", ce.to_csv());
      json j{{"spot_size_intensity_m", af::spot_size(ci, [&](double r) { return prof.resolution(r); })},
             {"spot_size_excitation_m", af::spot_size(ce, [&](double r) { return model.resolution(r); })},
             {"files", {"intensity_resolution.csv", "excitation_resolution.csv"}}};
      std::cout << j.dump(2) << '\n';
    } else if (*excite) {
      const af::PulseTrainConfig train = cfg.train();
      const af::TwoLevelSystem tls = cfg.two_level_system();
      const af::ExcitationResult r =
          af::excitation_probability(train, tls, cfg.geometry(), cfg.spectrum(), excite_rho, cfg.numerics());
      std::cout << af::excitation_result_json(r);
    } else if (*scenario) {
      const af::ScenarioReport r = af::run_scenario(cfg, out);
      std::cout << af::report_json(cfg, r);
    } else if (*figure) {
      for (const auto& f : af::emit_figure_data(cfg, figure_id, out)) std::cout << out << '/' << f << '\n';
    } else if (*scan) {
      const std::string name = "scan_" + scan_param + ".csv";
      af::write_output(out, name, af::scan_csv(cfg, scan_param, scan_values));
      std::cout << out << '/' << name << '\n';
    } else if (*oracle) {
      std::vector<std::pair<double, double>> grid;
      if (pairs.empty()) {
        grid = {{3.0, 0.05}, {10.0, 0.05}, {30.0, 0.05}};
      } else {
        for (const auto& p : pairs) grid.push_back(parse_pair(p));
      }
      af::write_output(out, "oracle_compare.csv", af::oracle_compare_csv(cfg, grid, oracle_pulses));
      std::cout << out << "/oracle_compare.csv\n";
    }
  } catch (const af::Error& e) {
    std::cerr << "attofocus " << command << ": " << af::error_kind_name(e.kind()) << ": " << e.what() << '\n';
    return af::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "attofocus " << command << ": " << e.what() << '\n';
    return 3;
  }
  return 0;
}
