#include "pwe/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace pwe {

namespace {

constexpr double kDegPerRad = 180.0 / M_PI;
constexpr double kParallelEps = 1e-12;

}  // namespace

double wrap_degrees(double deg) {
  double w = std::fmod(deg, 360.0);
  if (w < 0.0) w += 360.0;
  if (w >= 360.0) w = 0.0;  // fmod can round up to 360 for tiny negatives
  return w;
}

Bearing Bearing::from_radians(double rad) {
  return from_degrees(rad * kDegPerRad);
}

Bearing Bearing::of(const Vec2& v) {
  return from_radians(std::atan2(v.y(), v.x()));
}

double Bearing::radians() const { return deg_ / kDegPerRad; }

Vec2 Bearing::unit() const {
  const double r = radians();
  return {std::cos(r), std::sin(r)};
}

double bearing_offset(Bearing a, Bearing b) {
  double d = std::fmod(a.degrees() - b.degrees() + 180.0, 360.0);
  if (d < 0.0) d += 360.0;
  return d - 180.0;
}

double bearing_distance(Bearing a, Bearing b) {
  return std::abs(bearing_offset(a, b));
}

namespace {

enum class SegHit { None, Point, Overlap };

// Closed-segment intersection. On SegHit::Point, out holds the point.
SegHit intersect_segments(const Segment& s1, const Segment& s2, Point2& out) {
  const Vec2 r = s1.b - s1.a;
  const Vec2 s = s2.b - s2.a;
  const Vec2 d = s2.a - s1.a;
  const double rxs = cross2(r, s);
  const double scale = r.norm() * s.norm();

  if (std::abs(rxs) <= kParallelEps * scale) {
    const double dxr = cross2(d, r);
    if (std::abs(dxr) > kParallelEps * std::max(scale, d.norm() * r.norm())) {
      return SegHit::None;  // parallel, distinct lines
    }
    // Collinear: project s2 onto s1's parameter.
    const double rr = r.squaredNorm();
    double t0 = d.dot(r) / rr;
    double t1 = t0 + s.dot(r) / rr;
    if (t0 > t1) std::swap(t0, t1);
    const double lo = std::max(t0, 0.0);
    const double hi = std::min(t1, 1.0);
    if (lo > hi + kParallelEps) return SegHit::None;
    if (hi - lo <= kParallelEps) {
      const double t = 0.5 * (lo + hi);
      out = s1.a + t * r;
      return SegHit::Point;
    }
    return SegHit::Overlap;
  }

  const double t = cross2(d, s) / rxs;
  const double u = cross2(d, r) / rxs;
  if (t < -kParallelEps || t > 1.0 + kParallelEps) return SegHit::None;
  if (u < -kParallelEps || u > 1.0 + kParallelEps) return SegHit::None;
  out = s1.a + std::clamp(t, 0.0, 1.0) * r;
  return SegHit::Point;
}

}  // namespace

std::optional<Point2> segment_intersection(const Segment& s1, const Segment& s2) {
  Point2 p;
  switch (intersect_segments(s1, s2, p)) {
    case SegHit::None:
      return std::nullopt;
    case SegHit::Point:
      return p;
    case SegHit::Overlap:
      throw CollinearOverlap{};
  }
  return std::nullopt;
}

bool line_of_sight(const Point2& p, const Point2& q, const std::vector<Wall>& walls) {
  const Segment pq{p, q};
  Point2 ignored;
  for (const Wall& w : walls) {
    if (intersect_segments(pq, Segment{w.a, w.b}, ignored) != SegHit::None) {
      return false;
    }
  }
  return true;
}

std::optional<RayHit> ray_cast(const Point2& origin, Bearing direction,
                               const std::vector<Obstacle>& obstacles,
                               double max_range) {
  const Vec2 u = direction.unit();
  std::optional<RayHit> best;

  for (const Obstacle& ob : obstacles) {
    const Vec2 s = ob.segment.b - ob.segment.a;
    const Vec2 d = ob.segment.a - origin;
    const double uxs = cross2(u, s);

    double t;  // hit distance along the ray
    Point2 hit_point;
    if (std::abs(uxs) <= kParallelEps * s.norm()) {
      if (std::abs(cross2(d, u)) > kParallelEps * std::max(1.0, d.norm())) continue;
      // Collinear: nearest point of the overlap interval beyond the guard.
      double t0 = d.dot(u);
      double t1 = (ob.segment.b - origin).dot(u);
      if (t0 > t1) std::swap(t0, t1);
      t = std::max(t0, kSelfHitEps);
      if (t > t1 || t > max_range) continue;
      hit_point = origin + t * u;
    } else {
      t = cross2(d, s) / uxs;
      const double w = cross2(d, u) / uxs;
      if (w < -kParallelEps || w > 1.0 + kParallelEps) continue;
      if (t <= kSelfHitEps || t > max_range) continue;
      hit_point = ob.segment.a + std::clamp(w, 0.0, 1.0) * s;
    }

    if (!best || t < best->distance) {
      best = RayHit{hit_point, t, ob.tag};
    }
  }
  return best;
}

}  // namespace pwe
