#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "pwe/geometry.hpp"

#include <random>

using namespace pwe;

TEST_CASE("bearing normalization and arithmetic") {
  CHECK(Bearing::from_degrees(361.0).degrees() == doctest::Approx(1.0));
  CHECK(Bearing::from_degrees(-15.6).degrees() == doctest::Approx(344.4));
  CHECK(Bearing::from_degrees(720.0).degrees() == doctest::Approx(0.0));
  // idempotent
  const Bearing b = Bearing::from_degrees(-90.0);
  CHECK(Bearing::from_degrees(b.degrees()).degrees() == b.degrees());

  CHECK(bearing_offset(Bearing::from_degrees(10.0), Bearing::from_degrees(350.0)) ==
        doctest::Approx(20.0));
  CHECK(bearing_offset(Bearing::from_degrees(350.0), Bearing::from_degrees(10.0)) ==
        doctest::Approx(-20.0));
  CHECK(bearing_distance(Bearing::from_degrees(0.0), Bearing::from_degrees(180.0)) ==
        doctest::Approx(180.0));
}

TEST_CASE("segment_intersection examples") {
  const auto hit = segment_intersection({{0, 0}, {2, 2}}, {{0, 2}, {2, 0}});
  REQUIRE(hit);
  CHECK(hit->x() == doctest::Approx(1.0));
  CHECK(hit->y() == doctest::Approx(1.0));

  CHECK(!segment_intersection({{0, 0}, {1, 0}}, {{0, 1}, {1, 1}}));

  const auto hit2 = segment_intersection({{0, 0}, {4, 0}}, {{2, -1}, {2, 5}});
  REQUIRE(hit2);
  CHECK(hit2->x() == doctest::Approx(2.0));
  CHECK(hit2->y() == doctest::Approx(0.0));

  CHECK_THROWS_AS(segment_intersection({{0, 0}, {2, 0}}, {{1, 0}, {3, 0}}),
                  CollinearOverlap);
}

TEST_CASE("segment_intersection endpoint touch") {
  const auto hit = segment_intersection({{0, 0}, {1, 1}}, {{1, 1}, {2, 0}});
  REQUIRE(hit);
  CHECK(hit->x() == doctest::Approx(1.0));
  CHECK(hit->y() == doctest::Approx(1.0));
}

TEST_CASE("segment_intersection matches parametric oracle on random input") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  int hits = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Segment s1{{coord(rng), coord(rng)}, {coord(rng), coord(rng)}};
    const Segment s2{{coord(rng), coord(rng)}, {coord(rng), coord(rng)}};
    const auto expected = oracle::solve_segments(s1, s2);
    if (expected.overlap) continue;  // not produced by this generator
    const auto got = segment_intersection(s1, s2);
    REQUIRE(static_cast<bool>(got) == static_cast<bool>(expected.point));
    if (got) {
      ++hits;
      CHECK((*got - *expected.point).norm() < 1e-9);
    }
  }
  CHECK(hits > 50);  // the generator must actually exercise intersections
}

TEST_CASE("line_of_sight on the golden wall") {
  const std::vector<Wall> walls{{{5, 5}, {5, 8}}};
  CHECK(!line_of_sight({2.5, 7.5}, {7.5, 7.5}, walls));
  CHECK(line_of_sight({2.5, 7.5}, {5.0, 8.2}, walls));
  CHECK(line_of_sight({1, 1}, {2, 2}, {}));
  // grazing the wall endpoint counts as blocked
  CHECK(!line_of_sight({4, 9}, {6, 7}, walls));
}

TEST_CASE("line_of_sight is symmetric") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> coord(0.0, 10.0);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Wall> walls;
    const int n_walls = static_cast<int>(rng() % 4);
    for (int i = 0; i < n_walls; ++i) {
      walls.push_back({{coord(rng), coord(rng)}, {coord(rng), coord(rng)}});
    }
    const Point2 p{coord(rng), coord(rng)};
    const Point2 q{coord(rng), coord(rng)};
    if ((p - q).norm() < 1e-9) continue;
    CHECK(line_of_sight(p, q, walls) == line_of_sight(q, p, walls));
  }
}

TEST_CASE("ray_cast examples") {
  const std::vector<Obstacle> wall{{Segment{{5, -1}, {5, 1}}, 1}};
  const auto hit = ray_cast({0, 0}, Bearing::from_degrees(0), wall, 100.0);
  REQUIRE(hit);
  CHECK(hit->point.x() == doctest::Approx(5.0));
  CHECK(hit->point.y() == doctest::Approx(0.0));
  CHECK(hit->distance == doctest::Approx(5.0));
  CHECK(hit->tag == 1);

  CHECK(!ray_cast({0, 0}, Bearing::from_degrees(90), wall, 100.0));

  const std::vector<Obstacle> golden{{Segment{{5, 5}, {5, 8}}, 0}};
  const auto hit2 = ray_cast({2.5, 7.5}, Bearing::from_degrees(0), golden, 200.0);
  REQUIRE(hit2);
  CHECK(hit2->point.x() == doctest::Approx(5.0));
  CHECK(hit2->point.y() == doctest::Approx(7.5));
}

TEST_CASE("ray_cast respects max_range and the self-hit guard") {
  const std::vector<Obstacle> wall{{Segment{{5, -1}, {5, 1}}, 0}};
  CHECK(!ray_cast({0, 0}, Bearing::from_degrees(0), wall, 4.0));
  // origin exactly on the obstacle: no zero-distance hit
  CHECK(!ray_cast({5, 0}, Bearing::from_degrees(0), wall, 100.0));
}

TEST_CASE("ray_cast returns the minimum-distance hit (random scenes)") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  std::uniform_real_distribution<double> angle(0.0, 360.0);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Obstacle> obstacles;
    const int n = 1 + static_cast<int>(rng() % 10);
    for (int i = 0; i < n; ++i) {
      obstacles.push_back({Segment{{coord(rng), coord(rng)}, {coord(rng), coord(rng)}}, i});
    }
    const Point2 origin{coord(rng), coord(rng)};
    const Bearing dir = Bearing::from_degrees(angle(rng));
    const auto got = ray_cast(origin, dir, obstacles, 30.0);
    const auto expected = oracle::cast(origin, dir, obstacles, 30.0);
    REQUIRE(static_cast<bool>(got) == static_cast<bool>(expected));
    if (got) {
      CHECK(got->distance == doctest::Approx(expected->distance).epsilon(1e-9));
      CHECK((got->point - expected->point).norm() < 1e-9);
    }
  }
}
