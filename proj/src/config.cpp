#include "attofocus/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "attofocus/constants.hpp"
#include "attofocus/diagnostics.hpp"
#include "attofocus/errors.hpp"
#include "attofocus/radial_curve.hpp"

namespace attofocus {

double ScenarioConfig::transition_frequency() const noexcept {
  return constants::two_pi * constants::speed_of_light / transition_wavelength_m;
}

double ScenarioConfig::carrier_frequency() const noexcept {
  return carrier_frequency_rad_per_s.value_or(transition_frequency());
}

double ScenarioConfig::period() const noexcept {
  if (period_s) return *period_s;
  return period_cycles.value_or(kDefaultPeriodCycles) * constants::two_pi / transition_frequency();
}

TwoLevelSystem ScenarioConfig::two_level_system() const {
  return TwoLevelSystem(transition_frequency(), spontaneous_rate_per_s, inhomogeneous_broadening_per_s);
}

PulseSpectrum ScenarioConfig::spectrum() const {
  return PulseSpectrum::gaussian(carrier_frequency(), spectral_width_rad_per_s);
}

FocusingGeometry ScenarioConfig::geometry() const { return FocusingGeometry(focal_length_m, beam_waist_m); }

double ScenarioConfig::pulse_energy() const {
  if (pulse_energy_J) return *pulse_energy_J;
  if (!target_eta) return kDefaultPulseEnergy;
  // eta scales as sqrt(U)
  constexpr double reference = 1e-12;
  const double e = eta(geometry(), spectrum(), reference, two_level_system(), grid_scale);
  return reference * (*target_eta / e) * (*target_eta / e);
}

PulseTrainConfig ScenarioConfig::train() const {
  PulseTrainConfig t;
  t.pulse_count = pulse_count;
  t.period = period();
  t.pulse_energy = pulse_energy();
  return t;
}

NumericsOptions ScenarioConfig::numerics() const {
  NumericsOptions o;
  o.grid_scale = grid_scale;
  return o;
}

namespace {

enum class ValueType { real, integer, text };

struct KeyInfo {
  ValueType type;
  const char* unit;  // accepted trailing unit token, empty if none
  const char* doc;
};

const std::map<std::string, KeyInfo, std::less<>>& key_table() {
  static const std::map<std::string, KeyInfo, std::less<>> t = {
      {"transition_wavelength_m", {ValueType::real, "m", "two-level transition wavelength 2 pi c / omega0"}},
      {"spontaneous_rate_per_s", {ValueType::real, "1/s", "free-space decay rate Gamma0"}},
      {"inhomogeneous_broadening_per_s", {ValueType::real, "1/s", "inhomogeneous broadening gamma_c"}},
      {"carrier_frequency_rad_per_s", {ValueType::real, "rad/s", "spectral carrier (default: omega0)"}},
      {"spectral_width_rad_per_s", {ValueType::real, "rad/s", "spectral width Gamma"}},
      {"focal_length_m", {ValueType::real, "m", "reference sphere radius f"}},
      {"beam_waist_m", {ValueType::real, "m", "beam waist sigma (A = sigma / f)"}},
      {"pulse_count", {ValueType::integer, "", "pulses per train N"}},
      {"period_s", {ValueType::real, "s", "pulse period T (exclusive with period_cycles)"}},
      {"period_cycles", {ValueType::real, "", "omega0 T / (2 pi), default 14"}},
      {"pulse_energy_J", {ValueType::real, "J", "energy per pulse U, default 0.7e-9"}},
      {"target_eta", {ValueType::real, "", "choose U so the focal pulse area is this (exclusive with pulse_energy_J)"}},
      {"output_dir", {ValueType::text, "", "output directory"}},
      {"grid_scale", {ValueType::real, "", "multiplies all default grid densities"}},
      {"radial_points", {ValueType::integer, "", "samples on each resolution curve"}},
      {"radial_max_over_lambda", {ValueType::real, "", "curve extent in mean wavelengths / A"}},
      {"fig1b_window_widths", {ValueType::real, "", "field-trace half window in units of 1/Gamma"}},
  };
  return t;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(std::size_t line, std::string_view key, const std::string& msg) {
  std::ostringstream os;
  if (line > 0) os << "line " << line << ": ";
  if (!key.empty()) os << "'" << key << "': ";
  os << msg;
  throw ConfigError(os.str());
}

std::string_view strip_unit(std::size_t line, std::string_view key, std::string_view value, const KeyInfo& info) {
  const auto sp = value.find_first_of(" \t");
  if (sp == std::string_view::npos) return value;
  const std::string_view unit = trim(value.substr(sp));
  if (*info.unit == '\0' || unit != info.unit) {
    fail(line, key, "unexpected unit '" + std::string(unit) + "'" +
                        (*info.unit ? " (expected '" + std::string(info.unit) + "')" : " (dimensionless)"));
  }
  return trim(value.substr(0, sp));
}

double parse_real(std::size_t line, std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size() || !std::isfinite(out)) {
    fail(line, key, "not a number: '" + std::string(v) + "'");
  }
  return out;
}

int parse_int(std::size_t line, std::string_view key, std::string_view v) {
  long long out = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size() || out < -1000000000LL || out > 1000000000LL) {
    fail(line, key, "not an integer: '" + std::string(v) + "'");
  }
  return static_cast<int>(out);
}

void positive(double v, const char* key) {
  if (!(v > 0.0)) fail(0, key, "must be positive");
}

}  // namespace

void validate_config(const ScenarioConfig& c) {
  positive(c.transition_wavelength_m, "transition_wavelength_m");
  positive(c.spontaneous_rate_per_s, "spontaneous_rate_per_s");
  if (!(c.inhomogeneous_broadening_per_s >= 0.0)) fail(0, "inhomogeneous_broadening_per_s", "must be non-negative");
  if (c.carrier_frequency_rad_per_s) positive(*c.carrier_frequency_rad_per_s, "carrier_frequency_rad_per_s");
  positive(c.spectral_width_rad_per_s, "spectral_width_rad_per_s");
  positive(c.focal_length_m, "focal_length_m");
  positive(c.beam_waist_m, "beam_waist_m");
  if (c.pulse_count < 0) fail(0, "pulse_count", "must be non-negative");
  if (c.period_s && c.period_cycles) fail(0, "period_s", "cannot be combined with period_cycles");
  if (c.period_s) positive(*c.period_s, "period_s");
  if (c.period_cycles) positive(*c.period_cycles, "period_cycles");
  if (c.pulse_energy_J && c.target_eta) fail(0, "pulse_energy_J", "cannot be combined with target_eta");
  if (c.pulse_energy_J) positive(*c.pulse_energy_J, "pulse_energy_J");
  if (c.target_eta) positive(*c.target_eta, "target_eta");
  if (c.output_dir.empty()) fail(0, "output_dir", "must not be empty");
  positive(c.grid_scale, "grid_scale");
  if (c.radial_points < 3) fail(0, "radial_points", "must be at least 3");
  positive(c.radial_max_over_lambda, "radial_max_over_lambda");
  positive(c.fig1b_window_widths, "fig1b_window_widths");

  const PulseSpectrum s = c.spectrum();
  if (c.focal_length_m < 50.0 * s.mean_wavelength()) {
    std::ostringstream os;
    os << "focal point not in the far field: f must be at least 50 mean wavelengths (" << 50.0 * s.mean_wavelength()
       << " m)";
    fail(0, "focal_length_m", os.str());
  }
  const double T = c.period();
  if (T < 10.0 / c.spectral_width_rad_per_s) {
    fail(0, c.period_s ? "period_s" : "period_cycles", "pulses overlap: the period must be at least 10 / Gamma");
  }
  if (c.beam_waist_m / c.focal_length_m > 0.2) {
    warn("beam_waist_m: numerical aperture exceeds the paraxial bound 0.2");
  }
  const double cycles = c.transition_frequency() * T / constants::two_pi;
  if (c.pulse_count > 1 && std::fabs(cycles - std::round(cycles)) > 1e-6) {
    warn("period is not a multiple of the transition period; the N-pulse factor is not exact");
  }
  const double budget = (0.5 * c.spontaneous_rate_per_s + c.inhomogeneous_broadening_per_s) * c.pulse_count * T;
  if (budget > 0.1) {
    std::ostringstream os;
    os << "dephasing budget gamma N T = " << budget << " exceeds 0.1; unitary dynamics is not justified";
    warn(os.str());
  }
}

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig c;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, {}, "expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));
    const auto it = key_table().find(key);
    if (it == key_table().end()) fail(line_no, key, "unknown key");
    if (!seen.insert(std::string(key)).second) fail(line_no, key, "given more than once");
    if (value.empty()) fail(line_no, key, "missing value");
    const KeyInfo& info = it->second;
    if (info.type != ValueType::text) value = strip_unit(line_no, key, value, info);

    auto real = [&] { return parse_real(line_no, key, value); };
    if (key == "transition_wavelength_m") c.transition_wavelength_m = real();
    else if (key == "spontaneous_rate_per_s") c.spontaneous_rate_per_s = real();
    else if (key == "inhomogeneous_broadening_per_s") c.inhomogeneous_broadening_per_s = real();
    else if (key == "carrier_frequency_rad_per_s") c.carrier_frequency_rad_per_s = real();
    else if (key == "spectral_width_rad_per_s") c.spectral_width_rad_per_s = real();
    else if (key == "focal_length_m") c.focal_length_m = real();
    else if (key == "beam_waist_m") c.beam_waist_m = real();
    else if (key == "pulse_count") c.pulse_count = parse_int(line_no, key, value);
    else if (key == "period_s") c.period_s = real();
    else if (key == "period_cycles") c.period_cycles = real();
    else if (key == "pulse_energy_J") c.pulse_energy_J = real();
    else if (key == "target_eta") c.target_eta = real();
    else if (key == "output_dir") c.output_dir = std::string(value);
    else if (key == "grid_scale") c.grid_scale = real();
    else if (key == "radial_points") c.radial_points = parse_int(line_no, key, value);
    else if (key == "radial_max_over_lambda") c.radial_max_over_lambda = real();
    else if (key == "fig1b_window_widths") c.fig1b_window_widths = real();
  }
  try {
    validate_config(c);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ScenarioConfig& c) {
  std::ostringstream os;
  auto put = [&](const char* key, double v) { os << key << " = " << format_double(v) << '\n'; };
  auto put_opt = [&](const char* key, const std::optional<double>& v) {
    if (v) put(key, *v);
  };
  put("transition_wavelength_m", c.transition_wavelength_m);
  put("spontaneous_rate_per_s", c.spontaneous_rate_per_s);
  put("inhomogeneous_broadening_per_s", c.inhomogeneous_broadening_per_s);
  put_opt("carrier_frequency_rad_per_s", c.carrier_frequency_rad_per_s);
  put("spectral_width_rad_per_s", c.spectral_width_rad_per_s);
  put("focal_length_m", c.focal_length_m);
  put("beam_waist_m", c.beam_waist_m);
  os << "pulse_count = " << c.pulse_count << '\n';
  put_opt("period_s", c.period_s);
  put_opt("period_cycles", c.period_cycles);
  put_opt("pulse_energy_J", c.pulse_energy_J);
  put_opt("target_eta", c.target_eta);
  os << "output_dir = " << c.output_dir << '\n';
  put("grid_scale", c.grid_scale);
  os << "radial_points = " << c.radial_points << '\n';
  put("radial_max_over_lambda", c.radial_max_over_lambda);
  put("fig1b_window_widths", c.fig1b_window_widths);
  return os.str();
}

std::string config_format_help() {
  std::ostringstream os;
  os << "Config file: one 'key = value' per line, '#' starts a comment, blank lines ignored.\n"
        "Values are SI numbers; a trailing unit token is allowed if it matches the key (e.g. 'focal_length_m = 1e-3 m').\n"
        "Unknown or repeated keys are errors. Missing keys take the defaults below.\n\n";
  const ScenarioConfig d;
  for (const auto& [key, info] : key_table()) {
    os << "  " << key;
    if (*info.unit) os << " [" << info.unit << "]";
    os << "  " << info.doc << '\n';
  }
  os << "\nDefaults:\n" << serialize_config(d);
  return os.str();
}

}  // namespace attofocus
