#pragma once

#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <vector>

namespace pwe {

using Point2 = Eigen::Vector2d;
using Vec2 = Eigen::Vector2d;

/// Minimum travel distance before a ray may hit an obstacle again.
inline constexpr double kSelfHitEps = 1e-9;

inline double cross2(const Vec2& a, const Vec2& b) {
  return a.x() * b.y() - a.y() * b.x();
}

/// Wraps an angle in degrees into [0, 360).
double wrap_degrees(double deg);

/// A direction of travel in the plane, measured counterclockwise from +x.
/// Stored canonically in [0, 360) degrees.
class Bearing {
 public:
  Bearing() = default;

  static Bearing from_degrees(double deg) { return Bearing(wrap_degrees(deg)); }
  static Bearing from_radians(double rad);
  /// Bearing of a nonzero vector.
  static Bearing of(const Vec2& v);

  double degrees() const { return deg_; }
  double radians() const;
  Vec2 unit() const;
  Bearing reversed() const { return from_degrees(deg_ + 180.0); }

  friend bool operator==(const Bearing& a, const Bearing& b) {
    return a.deg_ == b.deg_;
  }

 private:
  explicit Bearing(double deg) : deg_(deg) {}
  double deg_ = 0.0;
};

/// Signed wrapped difference a - b in [-180, 180).
double bearing_offset(Bearing a, Bearing b);

/// |a - b| wrapped, in [0, 180].
double bearing_distance(Bearing a, Bearing b);

enum class Material { Absorber };

struct Wall {
  Point2 a;
  Point2 b;
  Material material = Material::Absorber;
};

struct Segment {
  Point2 a;
  Point2 b;
};

struct CollinearOverlap : std::runtime_error {
  CollinearOverlap() : std::runtime_error("segments share a sub-segment") {}
};

/// Intersection of two closed segments, if it is a single point.
/// Throws CollinearOverlap when the segments share a sub-segment of
/// nonzero length. Both segments must have nonzero length.
std::optional<Point2> segment_intersection(const Segment& s1, const Segment& s2);

/// True iff segment pq crosses no wall. Touching a wall anywhere,
/// including at a wall endpoint, counts as blocked.
bool line_of_sight(const Point2& p, const Point2& q, const std::vector<Wall>& walls);

struct Obstacle {
  Segment segment;
  int tag = 0;
};

struct RayHit {
  Point2 point;
  double distance = 0.0;
  int tag = 0;
};

/// Nearest obstacle intersection strictly farther than kSelfHitEps from
/// the origin, within max_range. Collinear passes along an obstacle hit
/// the near end of the overlap.
std::optional<RayHit> ray_cast(const Point2& origin, Bearing direction,
                               const std::vector<Obstacle>& obstacles,
                               double max_range);

}  // namespace pwe
