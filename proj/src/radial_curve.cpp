#include "attofocus/radial_curve.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "attofocus/errors.hpp"

namespace attofocus {

std::string_view curve_kind_name(CurveKind kind) noexcept {
  switch (kind) {
    case CurveKind::field_amplitude: return "field_amplitude";
    case CurveKind::intensity: return "intensity";
    case CurveKind::probability: return "probability";
    case CurveKind::resolution: return "resolution";
  }
  return "unknown";
}

CurveKind parse_curve_kind(std::string_view name) {
  for (CurveKind k : {CurveKind::field_amplitude, CurveKind::intensity, CurveKind::probability,
                      CurveKind::resolution}) {
    if (curve_kind_name(k) == name) return k;
  }
  throw InvalidParameter("unknown curve kind '" + std::string(name) + "'");
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

RadialCurve::RadialCurve(CurveKind kind, std::vector<double> radii, std::vector<double> values,
                         CurveMetadata meta)
    : kind_(kind), radii_(std::move(radii)), values_(std::move(values)), meta_(std::move(meta)) {
  if (radii_.empty()) throw InvalidParameter("radial curve needs at least one sample");
  if (radii_.size() != values_.size()) throw InvalidParameter("radial curve: radii and values differ in length");
  if (radii_.front() != 0.0) throw InvalidParameter("radial curve must start at rho = 0");
  for (std::size_t i = 1; i < radii_.size(); ++i) {
    if (!(radii_[i] > radii_[i - 1])) throw InvalidParameter("radial curve radii must be strictly increasing");
  }
  if (kind_ == CurveKind::resolution && values_.front() != 1.0) {
    throw InvalidParameter("resolution curve must equal 1 at rho = 0");
  }
}

void RadialCurve::write_csv(std::ostream& os) const {
  const std::string_view kind = curve_kind_name(kind_);
  os << "rho_m,value,kind\n";
  for (std::size_t i = 0; i < radii_.size(); ++i) {
    os << format_double(radii_[i]) << ',' << format_double(values_[i]) << ',' << kind << '\n';
  }
}

std::string RadialCurve::to_csv() const {
  std::ostringstream os;
  write_csv(os);
  return os.str();
}

RadialCurve RadialCurve::read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "rho_m,value,kind") {
    throw InvalidParameter("radial curve CSV: missing header 'rho_m,value,kind'");
  }
  std::vector<double> radii;
  std::vector<double> values;
  std::string kind_name;
  auto parse = [](std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
      throw InvalidParameter("radial curve CSV: bad number '" + std::string(s) + "'");
    }
    return v;
  };
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw InvalidParameter("radial curve CSV: expected three columns in '" + line + "'");
    }
    radii.push_back(parse(std::string_view(line).substr(0, c1)));
    values.push_back(parse(std::string_view(line).substr(c1 + 1, c2 - c1 - 1)));
    const std::string k = line.substr(c2 + 1);
    if (kind_name.empty()) kind_name = k;
    if (k != kind_name) throw InvalidParameter("radial curve CSV: mixed kinds");
  }
  if (kind_name.empty()) throw InvalidParameter("radial curve CSV: no rows");
  return RadialCurve(parse_curve_kind(kind_name), std::move(radii), std::move(values));
}

}  // namespace attofocus
