// Independent brute-force reference implementations used to check the
// library. Nothing here may call the code paths under test.
#pragma once

#include "pwe/geometry.hpp"
#include "pwe/orchestration.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

namespace oracle {

// Line-line parametric solve, restricted to the closed segments.
// Reports overlap = true for collinear segments sharing length.
struct SegSolve {
  bool overlap = false;
  std::optional<pwe::Point2> point;
};

inline SegSolve solve_segments(const pwe::Segment& s1, const pwe::Segment& s2) {
  const double x1 = s1.a.x(), y1 = s1.a.y(), x2 = s1.b.x(), y2 = s1.b.y();
  const double x3 = s2.a.x(), y3 = s2.a.y(), x4 = s2.b.x(), y4 = s2.b.y();
  const double den = (x2 - x1) * (y4 - y3) - (y2 - y1) * (x4 - x3);
  const double len = std::hypot(x2 - x1, y2 - y1) * std::hypot(x4 - x3, y4 - y3);
  SegSolve result;
  if (std::abs(den) <= 1e-12 * len) {
    const double area = (x3 - x1) * (y2 - y1) - (y3 - y1) * (x2 - x1);
    if (std::abs(area) > 1e-12 * std::max(len, 1.0)) return result;  // parallel
    const double rr = (x2 - x1) * (x2 - x1) + (y2 - y1) * (y2 - y1);
    double t0 = ((x3 - x1) * (x2 - x1) + (y3 - y1) * (y2 - y1)) / rr;
    double t1 = ((x4 - x1) * (x2 - x1) + (y4 - y1) * (y2 - y1)) / rr;
    if (t0 > t1) std::swap(t0, t1);
    const double lo = std::max(t0, 0.0), hi = std::min(t1, 1.0);
    if (lo > hi + 1e-12) return result;
    if (hi - lo <= 1e-12) {
      const double t = 0.5 * (lo + hi);
      result.point = pwe::Point2{x1 + t * (x2 - x1), y1 + t * (y2 - y1)};
    } else {
      result.overlap = true;
    }
    return result;
  }
  const double t = ((x3 - x1) * (y4 - y3) - (y3 - y1) * (x4 - x3)) / den;
  const double u = ((x3 - x1) * (y2 - y1) - (y3 - y1) * (x2 - x1)) / den;
  if (t >= -1e-12 && t <= 1.0 + 1e-12 && u >= -1e-12 && u <= 1.0 + 1e-12) {
    result.point = pwe::Point2{x1 + t * (x2 - x1), y1 + t * (y2 - y1)};
  }
  return result;
}

inline bool blocked(const pwe::Point2& p, const pwe::Point2& q,
                    const std::vector<pwe::Wall>& walls) {
  for (const pwe::Wall& w : walls) {
    const SegSolve s = solve_segments({p, q}, {w.a, w.b});
    if (s.overlap || s.point) return true;
  }
  return false;
}

// Nearest hit over all obstacle segments by exhaustive solve.
inline std::optional<pwe::RayHit> cast(const pwe::Point2& origin,
                                       pwe::Bearing direction,
                                       const std::vector<pwe::Obstacle>& obstacles,
                                       double max_range) {
  const pwe::Vec2 u = direction.unit();
  const pwe::Segment ray_seg{origin, origin + max_range * u};
  std::optional<pwe::RayHit> best;
  for (const pwe::Obstacle& ob : obstacles) {
    const SegSolve s = solve_segments(ray_seg, ob.segment);
    double dist;
    pwe::Point2 at;
    if (s.overlap) {
      // Take the near end of the overlap along the ray.
      const double t0 = (ob.segment.a - origin).dot(u);
      const double t1 = (ob.segment.b - origin).dot(u);
      dist = std::max(std::min(t0, t1), pwe::kSelfHitEps);
      if (dist > std::max(t0, t1) || dist > max_range) continue;
      at = origin + dist * u;
    } else if (s.point) {
      dist = (*s.point - origin).dot(u);
      at = *s.point;
      if (dist <= pwe::kSelfHitEps || dist > max_range) continue;
    } else {
      continue;
    }
    if (!best || dist < best->distance) best = pwe::RayHit{at, dist, ob.tag};
  }
  return best;
}

// ---------------------------------------------------------------------------
// Graph oracles.

// All simple Tx->Rx paths honoring the user/ap edge gates.
inline void all_paths_rec(const pwe::PweGraph& g, std::vector<int>& path,
                          std::vector<bool>& visited,
                          std::vector<std::vector<int>>& out) {
  const int v = path.back();
  if (v == g.rx) {
    out.push_back(path);
    return;
  }
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const pwe::GraphEdge& e = g.edges[i];
    if (e.u != v && e.v != v) continue;
    const int idx = static_cast<int>(i);
    if ((e.u == g.tx || e.v == g.tx) && !g.is_user_edge(idx)) continue;
    if ((e.u == g.rx || e.v == g.rx) && !g.is_ap_edge(idx)) continue;
    const int w = e.u == v ? e.v : e.u;
    if (visited[static_cast<std::size_t>(w)]) continue;
    visited[static_cast<std::size_t>(w)] = true;
    path.push_back(w);
    all_paths_rec(g, path, visited, out);
    path.pop_back();
    visited[static_cast<std::size_t>(w)] = false;
  }
}

inline std::vector<std::vector<int>> all_simple_paths(const pwe::PweGraph& g) {
  std::vector<std::vector<int>> out;
  std::vector<bool> visited(g.vertices.size(), false);
  visited[static_cast<std::size_t>(g.tx)] = true;
  std::vector<int> path{g.tx};
  all_paths_rec(g, path, visited, out);
  return out;
}

inline bool interior_disjoint(const std::vector<int>& a,
                              const std::vector<int>& b) {
  for (std::size_t i = 1; i + 1 < a.size(); ++i) {
    for (std::size_t j = 1; j + 1 < b.size(); ++j) {
      if (a[i] == b[j]) return false;
    }
  }
  return true;
}

// Maximum number of pairwise internally-vertex-disjoint Tx->Rx paths,
// by exhaustive search over the simple-path list.
inline int max_disjoint_rec(const std::vector<std::vector<int>>& paths,
                            std::vector<int>& chosen, std::size_t start) {
  int best = static_cast<int>(chosen.size());
  for (std::size_t i = start; i < paths.size(); ++i) {
    bool ok = true;
    for (int c : chosen) {
      if (!interior_disjoint(paths[static_cast<std::size_t>(c)], paths[i])) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    chosen.push_back(static_cast<int>(i));
    best = std::max(best, max_disjoint_rec(paths, chosen, i + 1));
    chosen.pop_back();
  }
  return best;
}

inline int max_disjoint_paths(const pwe::PweGraph& g) {
  const auto paths = all_simple_paths(g);
  std::vector<int> chosen;
  return max_disjoint_rec(paths, chosen, 0);
}

// Shortest Tx->Rx style path between two vertices over allowed interior
// vertices, by exhaustive simple-path enumeration.
inline void shortest_rec(const pwe::PweGraph& g, int dst,
                         const std::vector<bool>& allowed, std::vector<int>& path,
                         std::vector<bool>& visited, double length, double& best,
                         std::vector<int>& best_path) {
  const int v = path.back();
  if (v == dst) {
    if (length < best) {
      best = length;
      best_path = path;
    }
    return;
  }
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const pwe::GraphEdge& e = g.edges[i];
    if (e.u != v && e.v != v) continue;
    const int idx = static_cast<int>(i);
    if ((e.u == g.tx || e.v == g.tx) && !g.is_user_edge(idx)) continue;
    if ((e.u == g.rx || e.v == g.rx) && !g.is_ap_edge(idx)) continue;
    const int w = e.u == v ? e.v : e.u;
    if (visited[static_cast<std::size_t>(w)]) continue;
    if (w != dst && !allowed[static_cast<std::size_t>(w)]) continue;
    visited[static_cast<std::size_t>(w)] = true;
    path.push_back(w);
    shortest_rec(g, dst, allowed, path, visited, length + e.length, best,
                 best_path);
    path.pop_back();
    visited[static_cast<std::size_t>(w)] = false;
  }
}

inline std::vector<int> shortest_path(const pwe::PweGraph& g, int src, int dst,
                                      const std::vector<bool>& allowed) {
  std::vector<int> path{src};
  std::vector<bool> visited(g.vertices.size(), false);
  visited[static_cast<std::size_t>(src)] = true;
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> best_path;
  shortest_rec(g, dst, allowed, path, visited, 0.0, best, best_path);
  return best_path;
}

}  // namespace oracle
