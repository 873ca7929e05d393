#include "attofocus/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "attofocus/constants.hpp"
#include "attofocus/errors.hpp"
#include "attofocus/radial_curve.hpp"
#include "json.hpp"

namespace attofocus {

using json = nlohmann::ordered_json;

namespace {

json flags_json(const ValidityFlags& f) {
  return json{{"weak_field", f.weak_field},
              {"ultrafast", f.ultrafast},
              {"resonant_train", f.resonant_train},
              {"unitary_budget", f.unitary_budget},
              {"separated_pulses", f.separated_pulses}};
}

json config_json(const ScenarioConfig& c) {
  json j;
  j["transition_wavelength_m"] = c.transition_wavelength_m;
  j["spontaneous_rate_per_s"] = c.spontaneous_rate_per_s;
  j["inhomogeneous_broadening_per_s"] = c.inhomogeneous_broadening_per_s;
  j["carrier_frequency_rad_per_s"] = c.carrier_frequency();
  j["spectral_width_rad_per_s"] = c.spectral_width_rad_per_s;
  j["focal_length_m"] = c.focal_length_m;
  j["beam_waist_m"] = c.beam_waist_m;
  j["numerical_aperture"] = c.beam_waist_m / c.focal_length_m;
  j["pulse_count"] = c.pulse_count;
  j["period_s"] = c.period();
  j["grid_scale"] = c.grid_scale;
  return j;
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  return format_double(v);
}

}  // namespace

std::string write_output(const std::filesystem::path& out_dir, const std::string& name, const std::string& content) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + out_dir.string() + "': " + ec.message());
  std::ofstream out(out_dir / name, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + (out_dir / name).string() + "'");
  out << content;
  if (!out) throw ConfigError("write failed for '" + (out_dir / name).string() + "'");
  return name;
}

std::string excitation_result_json(const ExcitationResult& r) {
  json j{{"rho_m", r.rho}, {"p_e", r.p_e}, {"eta", r.eta}, {"f_value_per_s2", r.f_value}, {"flags", flags_json(r.flags)}};
  return j.dump(2) + "\n";
}

std::string oracle_report_json(const OracleReport& r) {
  json j;
  j["inputs"] = json{{"gamma_over_omega0", r.setup.gamma_over_omega0},
                     {"eta", r.setup.eta},
                     {"pulses", r.setup.pulses},
                     {"period_cycles", r.setup.period_cycles},
                     {"grid_scale", r.setup.grid_scale},
                     {"numerical_aperture", r.setup.numerical_aperture}};
  j["pulse_energy_J"] = r.pulse_energy;
  j["eta"] = r.eta_actual;
  j["p_e_oracle"] = r.p_e_oracle;
  j["p_e_analytic"] = r.p_e_analytic;
  j["relative_deviation"] = r.relative_deviation;
  j["p_e_sudden_reference"] = r.p_e_sudden_reference;
  j["c0_abs2"] = r.c0_abs2;
  j["max_excited_population"] = r.max_excited_population;
  j["unitarity_error"] = r.unitarity_error;
  j["steps"] = r.steps;
  j["flags"] = json{{"perturbative", r.perturbative}, {"weak_field", r.weak_field}};
  return j.dump(2) + "\n";
}

std::string report_json(const ScenarioConfig& cfg, const ScenarioReport& r) {
  json j;
  j["inputs"] = config_json(cfg);
  j["pulse_energy_J"] = r.pulse_energy;
  j["eta"] = r.eta;
  j["p_e_focal"] = r.p_e_focal;
  j["f_value_per_s2"] = r.f_value;
  j["imaging_rate_hz"] = r.imaging_rate;
  j["mean_wavelength_m"] = r.mean_wavelength;
  j["spot_size_intensity_m"] = r.spot_size_intensity;
  j["spot_size_excitation_m"] = r.spot_size_excitation ? json(*r.spot_size_excitation) : json(nullptr);
  j["flags"] = flags_json(r.flags);
  j["files"] = r.files;
  return j.dump(2) + "\n";
}

ScenarioReport run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out_dir) {
  validate_config(cfg);
  const TwoLevelSystem tls = cfg.two_level_system();
  const PulseSpectrum s = cfg.spectrum();
  const FocusingGeometry g = cfg.geometry();
  const PulseTrainConfig train = cfg.train();

  ScenarioReport rep;
  rep.pulse_energy = train.pulse_energy;
  rep.mean_wavelength = s.mean_wavelength();

  const ExcitationModel model(train, tls, g, s, cfg.numerics());
  rep.eta = model.eta();
  rep.p_e_focal = model.focal().p_e;
  rep.f_value = model.focal().f_value;
  rep.flags = model.focal().flags;
  rep.imaging_rate = imaging_rate(train, tls, rep.p_e_focal);

  const double max_rho = cfg.radial_max_over_lambda * s.mean_wavelength() / g.numerical_aperture();
  const std::vector<double> radii = radial_grid(max_rho, static_cast<std::size_t>(cfg.radial_points));
  const IntensityProfile prof(g, s, max_rho);
  const RadialCurve ci = intensity_resolution_curve(g, s, radii);
  rep.spot_size_intensity = spot_size(ci, [&](double r) { return prof.resolution(r); });

  std::optional<RadialCurve> ce;
  if (rep.p_e_focal > 0.0) {
    ce = excitation_resolution_curve(model, radii);
    rep.spot_size_excitation = spot_size(*ce, [&](double r) { return model.resolution(r); });
  }

  rep.files.push_back(write_output(out_dir, "intensity_resolution.csv", ci.to_csv()));
  if (ce) rep.files.push_back(write_output(out_dir, "excitation_resolution.csv", ce->to_csv()));
  rep.files.push_back("report.json");
  write_output(out_dir, "report.json", report_json(cfg, rep));
  return rep;
}

std::vector<std::string> emit_figure_data(const ScenarioConfig& cfg, std::string_view figure,
                                          const std::filesystem::path& out_dir) {
  validate_config(cfg);
  const PulseSpectrum s = cfg.spectrum();
  const double wbar = s.mean_frequency();
  std::ostringstream os;
  std::string name;

  if (figure == "1b") {
    const FocusingGeometry g = cfg.geometry();
    const double half = cfg.fig1b_window_widths / s.spectral_width();
    const double step = std::min(max_time_step(s), 2.0 * half / 400.0) / cfg.grid_scale;
    const auto m = static_cast<std::size_t>(std::ceil(half / step));
    TimeGrid grid{rephasing_time(g) - static_cast<double>(m) * step, step, 2 * m + 1};
    const std::vector<double> e = focal_field_trace(g, s, cfg.pulse_energy(), 0.0, grid);
    double peak = 0.0;
    for (double v : e) peak = std::max(peak, std::fabs(v));
    os << "omega_bar_t,t_s,field_arb,field_V_per_m\n";
    for (std::size_t i = 0; i < e.size(); ++i) {
      const double t = grid.at(i);
      os << csv_number(wbar * t) << ',' << csv_number(t) << ',' << csv_number(e[i] / peak) << ','
         << csv_number(e[i]) << '\n';
    }
    name = "fig1b.csv";
  } else if (figure == "1c") {
    os << "omega_over_omega_bar,spectrum_per_omega_bar\n";
    constexpr int n = 401;
    for (int i = 0; i < n; ++i) {
      const double x = 4.0 * i / (n - 1);
      os << csv_number(x) << ',' << csv_number(wbar * std::norm(s.value(x * wbar))) << '\n';
    }
    name = "fig1c.csv";
  } else if (figure == "1c-inset") {
    const double w0 = cfg.carrier_frequency();
    os << "gamma_over_omega0,omega_bar_over_omega0,asymptote_over_omega0\n";
    constexpr int n = 41;
    for (int i = 0; i < n; ++i) {
      const double r = std::pow(10.0, -2.0 + 4.0 * i / (n - 1));
      const PulseSpectrum si = PulseSpectrum::gaussian(w0, r * w0);
      os << csv_number(r) << ',' << csv_number(si.mean_frequency() / w0) << ','
         << csv_number(r * std::sqrt(8.0 / constants::pi)) << '\n';
    }
    name = "fig1c_inset.csv";
  } else if (figure == "1d") {
    const TwoLevelSystem tls = cfg.two_level_system();
    const FocusingGeometry g = cfg.geometry();
    PulseTrainConfig train = cfg.train();
    if (train.pulse_count == 0) train.pulse_count = 1;  // the ratio does not depend on N
    NumericsOptions opt = cfg.numerics();
    opt.allow_unphysical = true;  // shape only
    const ExcitationModel model(train, tls, g, s, opt);
    const double lam = s.mean_wavelength();
    const double na = g.numerical_aperture();
    const double max_rho = cfg.radial_max_over_lambda * lam / na;
    const std::vector<double> radii = radial_grid(max_rho, static_cast<std::size_t>(cfg.radial_points));
    const IntensityProfile prof(g, s, max_rho);
    os << "a_rho_over_lambda_bar,intensity_resolution,excitation_resolution\n";
    for (double r : radii) {
      os << csv_number(na * r / lam) << ',' << csv_number(prof.resolution(r)) << ',' << csv_number(model.resolution(r))
         << '\n';
    }
    name = "fig1d.csv";
  } else {
    throw InvalidParameter("unknown figure '" + std::string(figure) + "' (expected 1b, 1c, 1c-inset or 1d)");
  }
  return {write_output(out_dir, name, os.str())};
}

const std::vector<std::string>& scan_parameters() {
  static const std::vector<std::string> p = {"pulse_energy_J", "numerical_aperture", "spectral_width_rad_per_s",
                                             "pulse_count", "period_s"};
  return p;
}

std::string scan_csv(const ScenarioConfig& base, std::string_view parameter, const std::vector<double>& values) {
  const auto& allowed = scan_parameters();
  if (std::find(allowed.begin(), allowed.end(), parameter) == allowed.end()) {
    std::string list;
    for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
    throw InvalidParameter("cannot scan '" + std::string(parameter) + "'; choose one of: " + list);
  }
  std::ostringstream os;
  os << "value,eta,p_e_focal,imaging_rate_hz,spot_size_excitation_m,status\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (double v : values) {
    ScenarioConfig c = base;
    if (parameter == "pulse_energy_J") {
      c.pulse_energy_J = v;
      c.target_eta.reset();
    } else if (parameter == "numerical_aperture") {
      c.beam_waist_m = v * c.focal_length_m;
    } else if (parameter == "spectral_width_rad_per_s") {
      c.spectral_width_rad_per_s = v;
    } else if (parameter == "pulse_count") {
      if (v != std::floor(v) || v < 0) throw InvalidParameter("pulse_count values must be non-negative integers");
      c.pulse_count = static_cast<int>(v);
    } else {
      c.period_s = v;
      c.period_cycles.reset();
    }
    double eta_v = nan, p = nan, rate = nan, spot = nan;
    std::string status = "ok";
    try {
      validate_config(c);
      const TwoLevelSystem tls = c.two_level_system();
      const PulseSpectrum s = c.spectrum();
      const FocusingGeometry g = c.geometry();
      const PulseTrainConfig train = c.train();
      NumericsOptions opt = c.numerics();
      opt.allow_unphysical = true;
      const ExcitationModel model(train, tls, g, s, opt);
      eta_v = model.eta();
      p = model.focal().p_e;
      if (p > 1.0) {
        status = "regime_violation";
      } else {
        rate = imaging_rate(train, tls, p);
        if (p > 0.0) spot = excitation_spot_size(model, s, g, 0.5, static_cast<std::size_t>(c.radial_points),
                                                 c.radial_max_over_lambda);
      }
    } catch (const Error& e) {
      status = error_kind_name(e.kind());
    }
    os << csv_number(v) << ',' << csv_number(eta_v) << ',' << csv_number(p) << ',' << csv_number(rate) << ','
       << csv_number(spot) << ',' << status << '\n';
  }
  return os.str();
}

std::string oracle_compare_csv(const ScenarioConfig& cfg, const std::vector<std::pair<double, double>>& grid,
                               int pulses) {
  std::ostringstream os;
  os << "gamma_over_omega0,eta,p_e_analytic,p_e_oracle,relative_deviation,p_e_sudden_reference,status\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& [ratio, eta_v] : grid) {
    double pa = nan, po = nan, dev = nan, ps = nan;
    std::string status = "ok";
    try {
      const TwoLevelSystem tls = cfg.two_level_system();
      OracleSetup setup;
      setup.gamma_over_omega0 = ratio;
      setup.eta = eta_v;
      setup.pulses = pulses;
      setup.period_cycles = cfg.period() * cfg.transition_frequency() / constants::two_pi;
      setup.grid_scale = cfg.grid_scale;
      setup.numerical_aperture = cfg.beam_waist_m / cfg.focal_length_m;
      setup.focal_length = cfg.focal_length_m;
      const OracleReport r = run_oracle_comparison(tls, setup);
      pa = r.p_e_analytic;
      po = r.p_e_oracle;
      dev = r.relative_deviation;
      ps = r.p_e_sudden_reference;
      if (!r.perturbative) status = "nonperturbative";
    } catch (const Error& e) {
      status = error_kind_name(e.kind());
    }
    os << csv_number(ratio) << ',' << csv_number(eta_v) << ',' << csv_number(pa) << ',' << csv_number(po) << ','
       << csv_number(dev) << ',' << csv_number(ps) << ',' << status << '\n';
  }
  return os.str();
}

}  // namespace attofocus
