#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "attofocus/config.hpp"
#include "attofocus/excitation.hpp"
#include "attofocus/oracle.hpp"

namespace attofocus {

struct ScenarioReport {
  double eta = 0.0;
  double pulse_energy = 0.0;     // J
  double p_e_focal = 0.0;
  double f_value = 0.0;          // s^-2
  double imaging_rate = 0.0;     // Hz
  double mean_wavelength = 0.0;  // m
  double spot_size_intensity = 0.0;             // m
  std::optional<double> spot_size_excitation;   // m, absent when p_e(0) = 0
  ValidityFlags flags;
  std::vector<std::string> files;  // relative to the output directory
};

/// Computes eta, p_e(0), R and both spot sizes; writes intensity_resolution.csv,
/// excitation_resolution.csv and report.json into out_dir.
ScenarioReport run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out_dir);

std::string report_json(const ScenarioConfig& cfg, const ScenarioReport& report);
std::string excitation_result_json(const ExcitationResult& r);
std::string oracle_report_json(const OracleReport& r);

/// figure in {1b, 1c, 1c-inset, 1d}; returns the written file names.
std::vector<std::string> emit_figure_data(const ScenarioConfig& cfg, std::string_view figure,
                                          const std::filesystem::path& out_dir);

/// Parameters accepted by scan().
const std::vector<std::string>& scan_parameters();

/// One row per value: value,eta,p_e_focal,imaging_rate_hz,spot_size_excitation_m,status.
std::string scan_csv(const ScenarioConfig& cfg, std::string_view parameter, const std::vector<double>& values);

/// gamma_over_omega0,eta,p_e_analytic,p_e_oracle,relative_deviation,p_e_sudden_reference,status.
/// Failures are reported in the status column.
std::string oracle_compare_csv(const ScenarioConfig& cfg, const std::vector<std::pair<double, double>>& grid,
                               int pulses = 1);

/// Writes `content` to out_dir / name, creating out_dir. Returns name.
std::string write_output(const std::filesystem::path& out_dir, const std::string& name, const std::string& content);

}  // namespace attofocus
