#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "attofocus/excitation.hpp"
#include "attofocus/focal.hpp"
#include "attofocus/spectrum.hpp"

namespace attofocus {

/// Flat key = value scenario file. All quantities SI; keys carry their unit.
struct ScenarioConfig {
  double transition_wavelength_m = 719e-9;
  double spontaneous_rate_per_s = 1.0 / 1.6e-9;
  double inhomogeneous_broadening_per_s = 10.0 / 1.6e-9;
  std::optional<double> carrier_frequency_rad_per_s;  // defaults to the transition frequency
  double spectral_width_rad_per_s = 1.0 / 38e-18;
  double focal_length_m = 1e-3;
  double beam_waist_m = 1e-4;
  int pulse_count = 453;
  std::optional<double> period_s;       // exclusive with period_cycles
  std::optional<double> period_cycles;  // omega0 T / (2 pi); 14 if neither is given
  std::optional<double> pulse_energy_J; // exclusive with target_eta; 0.7 nJ if neither is given
  std::optional<double> target_eta;
  std::string output_dir = "out";
  double grid_scale = 1.0;
  int radial_points = 61;
  double radial_max_over_lambda = 0.75;  // in units of mean wavelength / A
  double fig1b_window_widths = 6.0;      // half-window in pulse widths 1/Gamma

  bool operator==(const ScenarioConfig&) const = default;

  double transition_frequency() const noexcept;
  double carrier_frequency() const noexcept;
  double period() const noexcept;
  TwoLevelSystem two_level_system() const;
  PulseSpectrum spectrum() const;
  FocusingGeometry geometry() const;
  /// Explicit energy, or the energy whose focal eta equals target_eta.
  double pulse_energy() const;
  PulseTrainConfig train() const;
  NumericsOptions numerics() const;
};

inline constexpr double kDefaultPulseEnergy = 0.7e-9;
inline constexpr double kDefaultPeriodCycles = 14.0;

/// Parses and validates. Throws ConfigError naming the offending key.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Every non-optional key plus the optional keys that are set.
std::string serialize_config(const ScenarioConfig& cfg);

/// Per-field and cross-field checks. Far field and pulse separation are errors;
/// paraxiality, train resonance and the unitarity budget only warn.
void validate_config(const ScenarioConfig& cfg);

/// Dialect description for --help.
std::string config_format_help();

}  // namespace attofocus
