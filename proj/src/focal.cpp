#include "attofocus/focal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "attofocus/bessel.hpp"
#include "attofocus/constants.hpp"
#include "attofocus/diagnostics.hpp"
#include "attofocus/errors.hpp"
#include "attofocus/simd/harmonic.hpp"

namespace attofocus {

using constants::speed_of_light;
using constants::vacuum_permittivity;

namespace {

void check_rho(double rho) {
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw InvalidParameter("radial coordinate must be >= 0");
}

void check_energy(double energy) {
  if (!(energy > 0.0) || !std::isfinite(energy)) throw InvalidParameter("pulse energy must be positive");
}

double field_prefactor(double energy) { return std::sqrt(2.0 * energy / (vacuum_permittivity * speed_of_light)); }

// Folded-transform amplitudes: E(tau) = Re sum_j a_j e^{-i w_j tau}, tau = t - f/c.
struct FieldPlan {
  std::vector<double> omega;
  std::vector<std::complex<double>> amp;
};

FieldPlan field_plan(const FocusingGeometry& g, const PulseSpectrum& s, double energy, double rho,
                     double max_abs_tau) {
  const double na_c = g.numerical_aperture() / speed_of_light;
  const SpectralSamples sp = s.samples(max_abs_tau + na_c * rho);
  const double pre = field_prefactor(energy) * na_c / constants::pi;
  FieldPlan plan;
  plan.omega = sp.omega;
  plan.amp.resize(sp.size());
  for (std::size_t j = 0; j < sp.size(); ++j) {
    const double w = sp.omega[j];
    plan.amp[j] = pre * sp.weight[j] * w * special::bessel_j1_over_x(na_c * w * rho) *
                  std::complex<double>(0.0, 1.0) * sp.phi[j];
  }
  return plan;
}

}  // namespace

FocusingGeometry::FocusingGeometry(double focal_length, double waist) : f_(focal_length), sigma_(waist) {
  if (!(focal_length > 0.0) || !std::isfinite(focal_length)) throw InvalidParameter("focal length must be positive");
  if (!(waist > 0.0) || !std::isfinite(waist)) throw InvalidParameter("beam waist must be positive");
  if (numerical_aperture() > 0.2) {
    std::ostringstream os;
    os << "numerical aperture " << numerical_aperture() << " exceeds the paraxial bound 0.2";
    warn(os.str());
  }
}

bool FocusingGeometry::far_field(const PulseSpectrum& s) const noexcept { return f_ >= 50.0 * s.mean_wavelength(); }

void FocusingGeometry::require_far_field(const PulseSpectrum& s) const {
  if (!far_field(s)) {
    std::ostringstream os;
    os << "focal length " << f_ << " m is below 50 mean wavelengths (" << 50.0 * s.mean_wavelength() << " m)";
    throw InvalidParameter(os.str());
  }
}

double max_time_step(const PulseSpectrum& s) {
  return constants::pi / (4.0 * (s.carrier_frequency() + 6.0 * s.spectral_width()));
}

double rephasing_time(const FocusingGeometry& g) noexcept { return g.focal_length() / speed_of_light; }

std::complex<double> focal_field_spectral(const FocusingGeometry& g, const PulseSpectrum& s, double energy,
                                          double rho, double z, double omega) {
  check_rho(rho);
  check_energy(energy);
  g.require_far_field(s);
  const double na_c = g.numerical_aperture() / speed_of_light;
  const double phase = omega * (g.focal_length() + z) / speed_of_light;
  const std::complex<double> i_phase = std::complex<double>(0.0, 1.0) * std::polar(1.0, phase);
  return i_phase * field_prefactor(energy) * s.value(omega) * (na_c * omega) *
         special::bessel_j1_over_x(na_c * omega * rho);
}

double focal_field_time(const FocusingGeometry& g, const PulseSpectrum& s, double energy, double rho, double t) {
  check_rho(rho);
  check_energy(energy);
  g.require_far_field(s);
  const double tau = t - rephasing_time(g);
  const FieldPlan plan = field_plan(g, s, energy, rho, std::fabs(tau));
  double sum = 0.0;
  for (std::size_t j = 0; j < plan.omega.size(); ++j) {
    sum += (plan.amp[j] * std::polar(1.0, -plan.omega[j] * tau)).real();
  }
  return sum;
}

std::vector<double> focal_field_trace(const FocusingGeometry& g, const PulseSpectrum& s, double energy, double rho,
                                      const TimeGrid& grid) {
  check_rho(rho);
  check_energy(energy);
  g.require_far_field(s);
  if (grid.count == 0) return {};
  if (!(grid.step > 0.0) || grid.step > max_time_step(s)) {
    std::ostringstream os;
    os << "time step " << grid.step << " s does not resolve the spectrum (max " << max_time_step(s) << " s)";
    throw NumericalError(os.str());
  }
  const double tau0 = grid.start - rephasing_time(g);
  const double tau1 = tau0 + grid.step * static_cast<double>(grid.count - 1);
  const FieldPlan plan = field_plan(g, s, energy, rho, std::max(std::fabs(tau0), std::fabs(tau1)));
  std::vector<std::complex<double>> z(grid.count);
  simd::synthesize(plan.omega, plan.amp, tau0, grid.step, z);
  std::vector<double> out(grid.count);
  for (std::size_t i = 0; i < grid.count; ++i) out[i] = z[i].real();
  return out;
}

IntensityProfile::IntensityProfile(const FocusingGeometry& g, const PulseSpectrum& s, double max_rho)
    : na_over_c_(g.numerical_aperture() / speed_of_light), max_rho_(max_rho) {
  check_rho(max_rho);
  const SpectralSamples sp = s.samples(na_over_c_ * max_rho);
  omega_ = sp.omega;
  amp_.resize(sp.size());
  for (std::size_t j = 0; j < sp.size(); ++j) {
    const double re_i_phi = -sp.phi[j].imag();
    amp_[j] = sp.weight[j] * na_over_c_ * sp.omega[j] * re_i_phi;
  }
  i0_ = intensity(0.0);
  if (!(i0_ > 0.0)) throw InvalidState("focal intensity vanishes at rho = 0");
}

double IntensityProfile::intensity(double rho) const {
  check_rho(rho);
  if (rho > max_rho_ * (1.0 + 1e-12)) throw RangeError("radius beyond the planned range of the intensity profile");
  double sum = 0.0;
  for (std::size_t j = 0; j < omega_.size(); ++j) sum += amp_[j] * special::bessel_j1_over_x(na_over_c_ * omega_[j] * rho);
  return sum * sum;
}

double IntensityProfile::resolution(double rho) const {
  if (rho == 0.0) return 1.0;
  const double i = intensity(rho);
  return 2.0 * i / (i0_ + i);
}

double focal_intensity_rephased(const FocusingGeometry& g, const PulseSpectrum& s, double rho) {
  check_rho(rho);
  const double na_c = g.numerical_aperture() / speed_of_light;
  const SpectralSamples sp = s.samples(na_c * rho);
  double sum = 0.0;
  for (std::size_t j = 0; j < sp.size(); ++j) {
    sum += sp.weight[j] * -sp.phi[j].imag() * na_c * sp.omega[j] * special::bessel_j1_over_x(na_c * sp.omega[j] * rho);
  }
  if (!std::isfinite(sum)) throw NumericalError("rephased intensity integral is not finite");
  return sum * sum;
}

double intensity_resolution(const FocusingGeometry& g, const PulseSpectrum& s, double rho) {
  check_rho(rho);
  return IntensityProfile(g, s, rho).resolution(rho);
}

std::vector<double> radial_grid(double max_rho, std::size_t n) {
  if (!(max_rho > 0.0) || n < 2) throw InvalidParameter("radial grid needs max_rho > 0 and at least 2 points");
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = max_rho * static_cast<double>(i) / static_cast<double>(n - 1);
  return r;
}

namespace {

CurveMetadata geometry_metadata(const FocusingGeometry& g, const PulseSpectrum& s, std::string quantity,
                                std::string unit) {
  CurveMetadata m;
  m.quantity = std::move(quantity);
  m.value_unit = std::move(unit);
  m.carrier_frequency = s.carrier_frequency();
  m.spectral_width = s.spectral_width();
  m.focal_length = g.focal_length();
  m.waist = g.waist();
  return m;
}

double max_of(std::span<const double> radii) { return radii.empty() ? 0.0 : radii.back(); }

}  // namespace

RadialCurve intensity_curve(const FocusingGeometry& g, const PulseSpectrum& s, std::span<const double> radii) {
  const IntensityProfile prof(g, s, max_of(radii));
  std::vector<double> v(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) v[i] = prof.intensity(radii[i]);
  return RadialCurve(CurveKind::intensity, {radii.begin(), radii.end()}, std::move(v),
                     geometry_metadata(g, s, "rephased_intensity", "arb"));
}

RadialCurve intensity_resolution_curve(const FocusingGeometry& g, const PulseSpectrum& s,
                                       std::span<const double> radii) {
  const IntensityProfile prof(g, s, max_of(radii));
  std::vector<double> v(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) v[i] = prof.resolution(radii[i]);
  return RadialCurve(CurveKind::resolution, {radii.begin(), radii.end()}, std::move(v),
                     geometry_metadata(g, s, "intensity_resolution", "1"));
}

namespace {

std::size_t first_crossing(const RadialCurve& curve, double threshold) {
  if (curve.kind() != CurveKind::resolution) throw InvalidParameter("spot size needs a resolution curve");
  const auto& v = curve.values();
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] <= threshold) return i;
  }
  std::ostringstream os;
  os << "resolution never drops to " << threshold << " within rho <= " << curve.radii().back()
     << " m; extend the radial grid";
  throw RangeError(os.str());
}

double bisect(const std::function<double(double)>& fn, double a, double b, double threshold) {
  double fa = fn(a) - threshold;
  for (int it = 0; it < 200 && (b - a) > 1e-12 * b; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = fn(m) - threshold;
    if (fm == 0.0) return m;
    if ((fa > 0.0) == (fm > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double spot_size(const RadialCurve& curve, const std::function<double(double)>& resolution, double threshold) {
  if (threshold >= 1.0) return 0.0;
  const std::size_t i = first_crossing(curve, threshold);
  return bisect(resolution, curve.radii()[i - 1], curve.radii()[i], threshold);
}

double spot_size(const RadialCurve& curve, double threshold) {
  if (threshold >= 1.0) return 0.0;
  const std::size_t i = first_crossing(curve, threshold);
  const double r0 = curve.radii()[i - 1];
  const double r1 = curve.radii()[i];
  const double v0 = curve.values()[i - 1];
  const double v1 = curve.values()[i];
  auto lin = [&](double r) { return v0 + (v1 - v0) * (r - r0) / (r1 - r0); };
  return bisect(lin, r0, r1, threshold);
}

double intensity_spot_size(const FocusingGeometry& g, const PulseSpectrum& s, double threshold, std::size_t points,
                           double max_rho_over_scale) {
  const double max_rho = max_rho_over_scale * s.mean_wavelength() / g.numerical_aperture();
  const std::vector<double> radii = radial_grid(max_rho, points);
  const IntensityProfile prof(g, s, max_rho);
  const RadialCurve curve = intensity_resolution_curve(g, s, radii);
  return spot_size(curve, [&](double r) { return prof.resolution(r); }, threshold);
}

}  // namespace attofocus
