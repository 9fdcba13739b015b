#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pwe/radio.hpp"

#include <cmath>
#include <random>

using namespace pwe;

namespace {

Device make_tx(double boresight_deg = 0.0, double lobe = 40.0,
               double power_dbm = -30.0) {
  Device d;
  d.role = Role::Tx;
  d.pattern = {Bearing::from_degrees(boresight_deg), lobe};
  d.tx_power_dbm = power_dbm;
  return d;
}

}  // namespace

TEST_CASE("antenna_weight closed form") {
  const AntennaPattern p{Bearing::from_degrees(0.0), 40.0};
  CHECK(antenna_weight(p, Bearing::from_degrees(0.0)) == doctest::Approx(1.0));
  CHECK(antenna_weight(p, Bearing::from_degrees(20.0)) == doctest::Approx(0.0));
  CHECK(antenna_weight(p, Bearing::from_degrees(-20.0)) == doctest::Approx(0.0));
  CHECK(antenna_weight(p, Bearing::from_degrees(10.0)) ==
        doctest::Approx(std::cos(M_PI / 4.0)));
  CHECK(antenna_weight(p, Bearing::from_degrees(25.0)) == 0.0);
  CHECK(antenna_weight(p, Bearing::from_degrees(180.0)) == 0.0);
}

TEST_CASE("antenna_weight is even and non-increasing in |offset|") {
  const AntennaPattern p{Bearing::from_degrees(73.0), 55.0};
  double prev = 2.0;
  for (double d = 0.0; d <= 27.5; d += 0.25) {
    const double plus = antenna_weight(p, Bearing::from_degrees(73.0 + d));
    const double minus = antenna_weight(p, Bearing::from_degrees(73.0 - d));
    CHECK(plus == doctest::Approx(minus).epsilon(1e-12));
    CHECK(plus <= prev + 1e-12);
    prev = plus;
  }
}

TEST_CASE("launch_rays single ray carries full power at boresight") {
  const auto rays = launch_rays(make_tx(30.0), 1);
  REQUIRE(rays.size() == 1);
  CHECK(rays[0].direction.degrees() == doctest::Approx(30.0));
  CHECK(rays[0].power_mw == doctest::Approx(0.001).epsilon(1e-12));
}

TEST_CASE("launch_rays conserves transmit power") {
  for (std::size_t n : {1ul, 2ul, 3ul, 10ul, 1000ul, 100000ul}) {
    const auto rays = launch_rays(make_tx(), n);
    double sum = 0.0;
    for (const Ray& r : rays) sum += r.power_mw;
    CHECK(sum == doctest::Approx(0.001).epsilon(1e-12));
  }
}

TEST_CASE("launch_rays midpoint spacing and symmetric weights") {
  const auto rays = launch_rays(make_tx(0.0, 40.0), 3);
  REQUIRE(rays.size() == 3);
  // midpoints of three equal slices of [-20, 20]
  CHECK(bearing_offset(rays[0].direction, Bearing::from_degrees(0.0)) ==
        doctest::Approx(-20.0 * 2.0 / 3.0));
  CHECK(bearing_offset(rays[1].direction, Bearing::from_degrees(0.0)) ==
        doctest::Approx(0.0));
  CHECK(bearing_offset(rays[2].direction, Bearing::from_degrees(0.0)) ==
        doctest::Approx(20.0 * 2.0 / 3.0));
  CHECK(rays[0].power_mw == doctest::Approx(rays[2].power_mw).epsilon(1e-12));
  CHECK(rays[1].power_mw > rays[0].power_mw);
}

TEST_CASE("path_gain BounceOnly") {
  const PowerModel m{PropagationMode::BounceOnly, 2.4e9, 0.01};
  CHECK(path_gain(m, 12.0, 3) == doctest::Approx(0.970299).epsilon(1e-12));
  CHECK(path_gain(m, 5.0, 0) == 1.0);
  CHECK(path_gain(m, 0.0, 0) == 1.0);
}

TEST_CASE("path_gain Friis") {
  const PowerModel m{PropagationMode::Friis, 2.4e9, 0.01};
  const double gain_db = 10.0 * std::log10(path_gain(m, 1.0, 0));
  CHECK(gain_db == doctest::Approx(-40.05).epsilon(1e-3));
  CHECK_THROWS_AS(path_gain(m, 0.0, 1), ZeroDistance);
}

TEST_CASE("path_gain is non-increasing in bounces and distance") {
  const PowerModel bounce{PropagationMode::BounceOnly, 2.4e9, 0.01};
  const PowerModel friis{PropagationMode::Friis, 2.4e9, 0.01};
  for (int b = 0; b < 20; ++b) {
    CHECK(path_gain(bounce, 1.0, b + 1) <= path_gain(bounce, 1.0, b));
  }
  for (double d = 1.0; d < 50.0; d += 1.0) {
    CHECK(path_gain(friis, d + 1.0, 0) < path_gain(friis, d, 0));
  }
}

TEST_CASE("dBm conversions") {
  CHECK(dbm_to_mw(0.0) == doctest::Approx(1.0));
  CHECK(dbm_to_mw(-30.0) == doctest::Approx(0.001).epsilon(1e-12));
  CHECK(mw_to_dbm(1.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(mw_to_dbm(0.0), NonPositivePower);
  CHECK_THROWS_AS(mw_to_dbm(-1.0), NonPositivePower);

  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dbm(-120.0, 30.0);
  for (int i = 0; i < 200; ++i) {
    const double x = dbm(rng);
    CHECK(mw_to_dbm(dbm_to_mw(x)) == doctest::Approx(x).epsilon(1e-12));
  }
}
