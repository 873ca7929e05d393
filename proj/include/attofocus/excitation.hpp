#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "attofocus/focal.hpp"
#include "attofocus/radial_curve.hpp"
#include "attofocus/spectrum.hpp"

namespace attofocus {

/// Free-space dipole moment (C m) for decay rate gamma0 at transition frequency omega0.
/// The only place the rate/dipole relation is encoded.
double dipole_from_rate(double omega0, double gamma0);
double rate_from_dipole(double omega0, double dipole);

class TwoLevelSystem {
 public:
  TwoLevelSystem(double transition_frequency, double spontaneous_rate, double inhomogeneous_broadening = 0.0);

  double transition_frequency() const noexcept { return omega0_; }
  double spontaneous_rate() const noexcept { return gamma0_; }
  double inhomogeneous_broadening() const noexcept { return gamma_c_; }
  double dephasing_rate() const noexcept { return 0.5 * gamma0_ + gamma_c_; }
  double dipole() const noexcept { return dipole_; }

 private:
  double omega0_;
  double gamma0_;
  double gamma_c_;
  double dipole_;
};

struct PulseTrainConfig {
  int pulse_count = 1;
  double period = 0.0;        // s
  double pulse_energy = 0.0;  // J

  /// Throws InvalidParameter on N < 0 or non-positive period/energy.
  void validate() const;
  /// omega0 T / (2 pi) within 1e-6 of an integer (always true for N <= 1).
  bool resonant(const TwoLevelSystem& tls) const noexcept;
  /// gamma N T
  double unitary_budget(const TwoLevelSystem& tls) const noexcept;
  /// T >= 10 / Gamma
  bool separated(const PulseSpectrum& s) const noexcept;
};

struct ValidityFlags {
  bool weak_field = false;        // eta <= 0.5
  bool ultrafast = false;         // Gamma / omega0 >= 3
  bool resonant_train = false;
  bool unitary_budget = false;    // gamma N T <= 0.1
  bool separated_pulses = false;  // T >= 10 / Gamma
};

struct ExcitationResult {
  double rho = 0.0;      // m
  double p_e = 0.0;
  double eta = 0.0;      // at the focus
  double f_value = 0.0;  // s^-2
  ValidityFlags flags;
};

struct NumericsOptions {
  double grid_scale = 1.0;        // multiplies all default grid densities
  bool allow_unphysical = false;  // return p_e > 1 instead of throwing
};

/// Time step for pulse-area sampling: min(2 pi / (40 omega0), 1 / (40 Gamma)) / grid_scale.
double area_time_step(const PulseSpectrum& s, const TwoLevelSystem& tls, double grid_scale = 1.0);

/// Single-pulse area chi0(rho, tau) = -(d/hbar) int_{-inf}^{tau} E(rho, t') dt'
/// and its derivative, the Rabi frequency. tau is measured from the pulse centre
/// (the rephasing time). The antiderivative is taken exactly in the spectral
/// domain. Internally frequencies are in units of omega0 and times in 1/omega0.
class PulseArea {
 public:
  PulseArea(const FocusingGeometry& g, const PulseSpectrum& s, double energy, const TwoLevelSystem& tls, double rho,
            double field_sign = 1.0);

  double chi(double tau) const;
  double rabi(double tau) const;  // rad/s

  /// Half-width (s) of the window outside which chi0 has decayed: 12/Gamma + A rho/c.
  double half_window() const noexcept { return half_window_ / unit_; }
  double frequency_unit() const noexcept { return unit_; }
  /// Highest retained frequency, carrier + 6 widths (rad/s).
  double bandwidth() const noexcept { return bandwidth_; }

  /// Reduced-unit evaluation on tau~_i = t0 + i dt; Rabi values in units of omega0.
  void chi_reduced(double t0, double dt, std::span<double> out) const;
  void rabi_reduced(double t0, double dt, std::span<double> out) const;

 private:
  double unit_;
  double half_window_;
  double bandwidth_;
  std::vector<double> x_;
  std::vector<std::complex<double>> b_;
  std::vector<std::complex<double>> db_;
};

/// chi0 sampled on a uniform grid of times measured from the pulse centre.
struct ChiTrace {
  double start = 0.0;      // s
  double step = 0.0;       // s
  double bandwidth = 0.0;  // rad/s, highest frequency present in chi0
  std::vector<double> values;

  double at(std::size_t i) const noexcept { return start + static_cast<double>(i) * step; }
  /// Samples `fn` on [-half_window, half_window].
  static ChiTrace from_function(const std::function<double(double)>& fn, double half_window, double step,
                                double bandwidth);
};

ChiTrace sample_chi(const PulseArea& area, const PulseSpectrum& s, const TwoLevelSystem& tls,
                    double grid_scale = 1.0);

/// chi0 at lab time t.
double chi_of_time(const FocusingGeometry& g, const PulseSpectrum& s, double energy, const TwoLevelSystem& tls,
                   double rho, double t);

/// max_t chi0(0, t), grid scan followed by root refinement of the Rabi frequency.
double eta(const FocusingGeometry& g, const PulseSpectrum& s, double energy, const TwoLevelSystem& tls,
           double grid_scale = 1.0);
double eta(const PulseArea& area, const PulseSpectrum& s, const TwoLevelSystem& tls, double grid_scale = 1.0);

struct FIntegralResult {
  double value = 0.0;   // s^-2
  double cutoff = 0.0;  // rad/s
  std::size_t time_samples = 0;
};

/// f = int_0^inf dw w^3 | int dtau e^{i w tau} sin(omega0 tau) chi0^2(tau) |^2.
/// Throws InvalidParameter if chi0 has not decayed at the trace ends and
/// NumericalError if the outer cutoff cannot be certified.
FIntegralResult f_integral(const TwoLevelSystem& tls, const ChiTrace& chi);

/// Leading-order sudden reference: int_0^inf dw w | int dtau e^{i w tau} chi0^2 |^2 (dimensionless).
FIntegralResult sudden_reference_integral(const TwoLevelSystem& tls, const ChiTrace& chi);

/// Weak-field probability for a resonant train. Throws RegimeViolation when
/// p_e > 1 unless options.allow_unphysical.
ExcitationResult excitation_probability(const PulseTrainConfig& train, const TwoLevelSystem& tls,
                                        const FocusingGeometry& g, const PulseSpectrum& s, double rho,
                                        const NumericsOptions& options = {});

/// Reuses the focal pulse area and eta across many radii.
class ExcitationModel {
 public:
  ExcitationModel(const PulseTrainConfig& train, const TwoLevelSystem& tls, const FocusingGeometry& g,
                  const PulseSpectrum& s, const NumericsOptions& options = {});

  double eta() const noexcept { return eta_; }
  ExcitationResult at(double rho) const;
  /// 2 p(rho) / [p(0) + p(rho)]. Throws InvalidState if p(0) = 0.
  double resolution(double rho) const;
  const ExcitationResult& focal() const noexcept { return focal_; }

 private:
  double f_at(double rho) const;
  double probability(double f) const;

  PulseTrainConfig train_;
  TwoLevelSystem tls_;
  FocusingGeometry g_;
  PulseSpectrum s_;
  NumericsOptions options_;
  double eta_ = 0.0;
  ExcitationResult focal_;
};

double excitation_resolution(const PulseTrainConfig& train, const TwoLevelSystem& tls, const FocusingGeometry& g,
                             const PulseSpectrum& s, double rho, const NumericsOptions& options = {});

RadialCurve excitation_resolution_curve(const ExcitationModel& model, std::span<const double> radii);

/// Spot size of the excitation resolution, bisected on the continuous function.
double excitation_spot_size(const ExcitationModel& model, const PulseSpectrum& s, const FocusingGeometry& g,
                            double threshold = 0.5, std::size_t points = 61, double max_rho_over_scale = 0.75);

/// p_e / (N T + 1/Gamma0), Hz. p_e must lie in [0, 1].
double imaging_rate(const PulseTrainConfig& train, const TwoLevelSystem& tls, double p_e_focal);

/// Dimensionless coefficients at the focus for Gaussian pulses:
/// p_e(0) / (eta^4 N Gamma0/omega0) and eta / (A [U Gamma0 / (hbar omega0 Gamma)]^1/2).
struct ClosedFormCoefficients {
  double probability = 0.0;
  double area = 0.0;
};

ClosedFormCoefficients closed_form_coefficients(const TwoLevelSystem& tls, double gamma_over_omega0,
                                                double numerical_aperture = 0.1, double grid_scale = 1.0);

}  // namespace attofocus
