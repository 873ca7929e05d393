#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace attofocus {

enum class CurveKind { field_amplitude, intensity, probability, resolution };

std::string_view curve_kind_name(CurveKind kind) noexcept;
/// Throws InvalidParameter for an unknown name.
CurveKind parse_curve_kind(std::string_view name);

struct CurveMetadata {
  std::string quantity;    // free-form, e.g. "intensity_resolution"
  std::string value_unit;  // "1" for dimensionless
  double carrier_frequency = 0.0;
  double spectral_width = 0.0;
  double focal_length = 0.0;
  double waist = 0.0;
  double pulse_energy = 0.0;
};

/// Sampled function of the radial coordinate. Radii are in metres, strictly
/// increasing, and start at 0. Resolution curves have value 1 at the origin.
class RadialCurve {
 public:
  RadialCurve(CurveKind kind, std::vector<double> radii, std::vector<double> values, CurveMetadata meta = {});

  CurveKind kind() const noexcept { return kind_; }
  const std::vector<double>& radii() const noexcept { return radii_; }
  const std::vector<double>& values() const noexcept { return values_; }
  const CurveMetadata& metadata() const noexcept { return meta_; }
  std::size_t size() const noexcept { return radii_.size(); }

  /// Header `rho_m,value,kind`, shortest round-trip decimals, LF endings.
  void write_csv(std::ostream& os) const;
  std::string to_csv() const;
  static RadialCurve read_csv(std::istream& is);

 private:
  CurveKind kind_;
  std::vector<double> radii_;
  std::vector<double> values_;
  CurveMetadata meta_;
};

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

}  // namespace attofocus
