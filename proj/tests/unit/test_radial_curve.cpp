#include <charconv>
#include <cmath>
#include <string>
#include <limits>
#include <sstream>

#include "attofocus/errors.hpp"
#include "attofocus/radial_curve.hpp"
#include "doctest.h"

using namespace attofocus;

TEST_CASE("construction validates samples") {
  CHECK_NOTHROW(RadialCurve(CurveKind::intensity, {0.0, 1e-9}, {2.0, 1.0}));
  CHECK_THROWS_AS(RadialCurve(CurveKind::intensity, {}, {}), InvalidParameter);
  CHECK_THROWS_AS(RadialCurve(CurveKind::intensity, {0.0, 1.0}, {1.0}), InvalidParameter);
  CHECK_THROWS_AS(RadialCurve(CurveKind::intensity, {1e-9, 2e-9}, {1.0, 1.0}), InvalidParameter);
  CHECK_THROWS_AS(RadialCurve(CurveKind::intensity, {0.0, 2e-9, 2e-9}, {1.0, 1.0, 1.0}), InvalidParameter);
  CHECK_THROWS_AS(RadialCurve(CurveKind::resolution, {0.0, 1e-9}, {0.9, 0.5}), InvalidParameter);
}

TEST_CASE("kind names round trip") {
  for (CurveKind k : {CurveKind::field_amplitude, CurveKind::intensity, CurveKind::probability, CurveKind::resolution}) {
    CHECK(parse_curve_kind(curve_kind_name(k)) == k);
  }
  CHECK_THROWS_AS(parse_curve_kind("brightness"), InvalidParameter);
}

TEST_CASE("CSV round trip is bit exact") {
  std::vector<double> r, v;
  for (int i = 0; i < 50; ++i) {
    r.push_back(i * 1.7e-9 / 3.0);
    v.push_back(i == 0 ? 1.0 : std::exp(-0.1 * i) / 3.0);
  }
  const RadialCurve c(CurveKind::resolution, r, v);
  const std::string text = c.to_csv();
  CHECK(text.rfind("rho_m,value,kind\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  std::istringstream is(text);
  const RadialCurve back = RadialCurve::read_csv(is);
  CHECK(back.kind() == CurveKind::resolution);
  CHECK(back.radii() == c.radii());
  CHECK(back.values() == c.values());
  CHECK(back.to_csv() == text);
}

TEST_CASE("CSV reader rejects malformed input") {
  auto read = [](const std::string& s) {
    std::istringstream is(s);
    return RadialCurve::read_csv(is);
  };
  CHECK_THROWS_AS(read("rho,value\n0,1,intensity\n"), InvalidParameter);
  CHECK_THROWS_AS(read("rho_m,value,kind\n"), InvalidParameter);
  CHECK_THROWS_AS(read("rho_m,value,kind\n0,abc,intensity\n"), InvalidParameter);
  CHECK_THROWS_AS(read("rho_m,value,kind\n0,1\n"), InvalidParameter);
  CHECK_THROWS_AS(read("rho_m,value,kind\n0,1,intensity\n1,1,probability\n"), InvalidParameter);
}

TEST_CASE("shortest round-trip formatting") {
  for (double x : {0.1, 1.0 / 3.0, 6.02214076e23, 5e-324, -2.5, 0.0}) {
    const std::string t = format_double(x);
    double back = 1.0;
    std::from_chars(t.data(), t.data() + t.size(), back);
    CHECK(back == x);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
}
