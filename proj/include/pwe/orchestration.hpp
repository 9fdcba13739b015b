#pragma once

#include "pwe/metasurface.hpp"
#include "pwe/scene.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pwe {

enum class VertexKind { Tx, Rx, Slot };

struct GraphVertex {
  std::string id;
  Point2 position{0.0, 0.0};
  VertexKind kind = VertexKind::Slot;
};

struct GraphEdge {
  int u = 0;
  int v = 0;
  double length = 0.0;
};

/// LOS graph over devices and candidate UAV slots. user_edges and
/// ap_edges index into `edges` and gate the first and last hop of any
/// path: only edges inside the Tx (resp. Rx) lobe carry power.
struct PweGraph {
  std::vector<GraphVertex> vertices;
  std::vector<GraphEdge> edges;
  std::vector<int> user_edges;
  std::vector<int> ap_edges;
  int tx = -1;
  int rx = -1;

  bool is_user_edge(int edge_index) const;
  bool is_ap_edge(int edge_index) const;
  std::optional<int> edge_between(int u, int v) const;
  /// Neighbors of v usable in a Tx->Rx path: hops at the Tx are limited
  /// to user_edges and hops into the Rx to ap_edges.
  std::vector<int> usable_neighbors(int v) const;
};

struct CandidateSlot {
  std::string id;
  Point2 position{0.0, 0.0};
  bool busy = false;
};

PweGraph build_graph(const Scene& scene, const std::vector<CandidateSlot>& slots);

/// Up to k internally-vertex-disjoint Tx->Rx paths (node-split max
/// flow); among maximum sets, smaller total Euclidean length wins.
/// Every path starts on a user edge and ends on an ap edge.
std::vector<std::vector<int>> vertex_disjoint_paths(const PweGraph& g, int k);

struct AnglePair {
  Bearing doa;  // travel bearing into the vertex
  Bearing dod;  // travel bearing out of the vertex
};

/// (DoA, DoD) per interior point of a polyline path of >= 3 points.
std::vector<AnglePair> required_angles(const std::vector<Point2>& path);
std::vector<AnglePair> required_angles(const PweGraph& g,
                                       const std::vector<int>& path);

/// Shortest path by Euclidean edge length between two vertices, using
/// only interior vertices for which `allowed` is true. Endpoints are
/// always allowed. Empty when disconnected.
std::vector<int> dijkstra_path(const PweGraph& g, int src, int dst,
                               const std::vector<bool>& allowed);

struct Assignment {
  int vertex = -1;
  std::string slot_id;
  MetasurfaceUnit unit;
  PlacedUnit placed;
  AnglePair angles;
};

struct UavTask {
  std::string uav_id;
  std::string slot_id;
  double travel_distance = 0.0;  // round trip base -> slot -> base
};

enum class PlanStatus { Complete, Infeasible };

struct DeploymentPlan {
  PlanStatus status = PlanStatus::Infeasible;
  std::string infeasible_reason;
  std::vector<int> path;  // vertex indices Tx .. Rx
  std::vector<Assignment> assignments;
  std::vector<UavTask> uav_tasks;
};

struct PlanConfig {
  double tolerance_deg = 10.0;
  int retries = 10;
};

/// Greedy static-unit planner: find a disjoint path, serve its interior
/// vertices from the inventory, drop unserved vertices, repair the gaps
/// with Dijkstra, re-validate, and retry on failure.
DeploymentPlan greedy_plan(const PweGraph& g, Inventory& inventory,
                           const PlanConfig& config = {});

struct Uav {
  std::string id;
  Point2 base{0.0, 0.0};
  double range_budget = 0.0;  // meters of total flight
};

struct UavFleet {
  std::vector<Uav> uavs;
};

/// Assigns each planned slot the nearest unassigned UAV whose round
/// trip fits its range budget; an unservable slot turns the plan
/// Infeasible(energy).
DeploymentPlan task_uavs(const DeploymentPlan& plan, const UavFleet& fleet);

}  // namespace pwe
