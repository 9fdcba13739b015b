#include "pwe/orchestration.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <set>

namespace pwe {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

bool PweGraph::is_user_edge(int edge_index) const {
  return std::find(user_edges.begin(), user_edges.end(), edge_index) !=
         user_edges.end();
}

bool PweGraph::is_ap_edge(int edge_index) const {
  return std::find(ap_edges.begin(), ap_edges.end(), edge_index) !=
         ap_edges.end();
}

std::optional<int> PweGraph::edge_between(int u, int v) const {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const GraphEdge& e = edges[i];
    if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) {
      return static_cast<int>(i);
    }
  }
  return std::nullopt;
}

std::vector<int> PweGraph::usable_neighbors(int v) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const GraphEdge& e = edges[i];
    if (e.u != v && e.v != v) continue;
    const int idx = static_cast<int>(i);
    if ((e.u == tx || e.v == tx) && !is_user_edge(idx)) continue;
    if ((e.u == rx || e.v == rx) && !is_ap_edge(idx)) continue;
    out.push_back(e.u == v ? e.v : e.u);
  }
  return out;
}

PweGraph build_graph(const Scene& scene, const std::vector<CandidateSlot>& slots) {
  PweGraph g;
  g.vertices.push_back({"tx", scene.tx.position, VertexKind::Tx});
  g.vertices.push_back({"rx", scene.rx.position, VertexKind::Rx});
  g.tx = 0;
  g.rx = 1;
  for (const CandidateSlot& s : slots) {
    g.vertices.push_back({s.id, s.position, VertexKind::Slot});
  }

  const int n = static_cast<int>(g.vertices.size());
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const Point2& pu = g.vertices[u].position;
      const Point2& pv = g.vertices[v].position;
      if ((pv - pu).norm() < 1e-12) continue;
      if (!line_of_sight(pu, pv, scene.walls)) continue;
      const int idx = static_cast<int>(g.edges.size());
      g.edges.push_back({u, v, (pv - pu).norm()});

      if (u == g.tx || v == g.tx) {
        const int other = (u == g.tx) ? v : u;
        const Bearing departure =
            Bearing::of(g.vertices[other].position - scene.tx.position);
        if (antenna_weight(scene.tx.pattern, departure) > 0.0) {
          g.user_edges.push_back(idx);
        }
      }
      if (u == g.rx || v == g.rx) {
        const int other = (u == g.rx) ? v : u;
        const Bearing source =
            Bearing::of(g.vertices[other].position - scene.rx.position);
        if (antenna_weight(scene.rx.pattern, source) > 0.0) {
          g.ap_edges.push_back(idx);
        }
      }
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Vertex-disjoint paths via node-split min-cost max-flow.

namespace {

struct FlowArc {
  int to;
  int cap;
  double cost;
  int rev;  // index of the reverse arc in arcs[to]
  bool forward;
};

class FlowNetwork {
 public:
  explicit FlowNetwork(int n) : arcs_(n) {}

  void add_arc(int from, int to, int cap, double cost) {
    arcs_[from].push_back(
        {to, cap, cost, static_cast<int>(arcs_[to].size()), true});
    arcs_[to].push_back(
        {from, 0, -cost, static_cast<int>(arcs_[from].size()) - 1, false});
  }

  // One Bellman-Ford augmentation of unit flow; false when disconnected.
  bool augment(int src, int dst) {
    const int n = static_cast<int>(arcs_.size());
    std::vector<double> dist(n, kInf);
    std::vector<int> prev_node(n, -1), prev_arc(n, -1);
    dist[src] = 0.0;
    for (int round = 0; round < n; ++round) {
      bool changed = false;
      for (int v = 0; v < n; ++v) {
        if (dist[v] == kInf) continue;
        for (std::size_t i = 0; i < arcs_[v].size(); ++i) {
          const FlowArc& a = arcs_[v][i];
          if (a.cap <= 0) continue;
          if (dist[v] + a.cost < dist[a.to] - 1e-15) {
            dist[a.to] = dist[v] + a.cost;
            prev_node[a.to] = v;
            prev_arc[a.to] = static_cast<int>(i);
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    if (dist[dst] == kInf) return false;
    for (int v = dst; v != src; v = prev_node[v]) {
      FlowArc& a = arcs_[prev_node[v]][prev_arc[v]];
      a.cap -= 1;
      arcs_[v][a.rev].cap += 1;
    }
    return true;
  }

  const std::vector<std::vector<FlowArc>>& arcs() const { return arcs_; }

 private:
  std::vector<std::vector<FlowArc>> arcs_;
};

}  // namespace

std::vector<std::vector<int>> vertex_disjoint_paths(const PweGraph& g, int k) {
  if (g.tx < 0 || g.rx < 0) return {};
  const int n = static_cast<int>(g.vertices.size());
  const auto node_in = [](int v) { return 2 * v; };
  const auto node_out = [](int v) { return 2 * v + 1; };

  FlowNetwork net(2 * n);
  for (int v = 0; v < n; ++v) {
    const int cap = (v == g.tx || v == g.rx) ? k : 1;
    net.add_arc(node_in(v), node_out(v), cap, 0.0);
  }
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const GraphEdge& e = g.edges[i];
    const int idx = static_cast<int>(i);
    const bool touches_tx = e.u == g.tx || e.v == g.tx;
    const bool touches_rx = e.u == g.rx || e.v == g.rx;
    if (touches_tx && !g.is_user_edge(idx)) continue;
    if (touches_rx && !g.is_ap_edge(idx)) continue;
    net.add_arc(node_out(e.u), node_in(e.v), 1, e.length);
    net.add_arc(node_out(e.v), node_in(e.u), 1, e.length);
  }

  int flow = 0;
  while (flow < k && net.augment(node_in(g.tx), node_out(g.rx))) ++flow;

  // Decompose flow into paths by walking used arcs from the Tx.
  std::vector<std::vector<int>> used(2 * n);  // spent forward arcs per node
  std::vector<std::vector<int>> paths;
  for (int p = 0; p < flow; ++p) {
    std::vector<int> path{g.tx};
    int node = node_out(g.tx);
    while (node != node_out(g.rx)) {
      const auto& arcs = net.arcs()[node];
      int taken = -1;
      for (std::size_t i = 0; i < arcs.size(); ++i) {
        const FlowArc& a = arcs[i];
        // A forward arc carries flow when its residual reverse cap > 0.
        if (!a.forward) continue;
        if (net.arcs()[a.to][a.rev].cap <= 0) continue;
        if (std::find(used[node].begin(), used[node].end(),
                      static_cast<int>(i)) != used[node].end()) {
          continue;
        }
        taken = static_cast<int>(i);
        break;
      }
      if (taken < 0) break;  // should not happen for a valid flow
      used[node].push_back(taken);
      node = arcs[taken].to;
      if (node % 2 == 0) path.push_back(node / 2);  // arrived at an in-node
      node = (node % 2 == 0) ? node + 1 : node;     // pass through the split
    }
    if (path.back() == g.rx) paths.push_back(std::move(path));
  }
  return paths;
}

std::vector<AnglePair> required_angles(const std::vector<Point2>& path) {
  std::vector<AnglePair> out;
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    out.push_back({Bearing::of(path[i] - path[i - 1]),
                   Bearing::of(path[i + 1] - path[i])});
  }
  return out;
}

std::vector<AnglePair> required_angles(const PweGraph& g,
                                       const std::vector<int>& path) {
  std::vector<Point2> points;
  points.reserve(path.size());
  for (int v : path) points.push_back(g.vertices[static_cast<std::size_t>(v)].position);
  return required_angles(points);
}

std::vector<int> dijkstra_path(const PweGraph& g, int src, int dst,
                               const std::vector<bool>& allowed) {
  const int n = static_cast<int>(g.vertices.size());
  std::vector<double> dist(n, kInf);
  std::vector<int> prev(n, -1);
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  dist[src] = 0.0;
  queue.push({0.0, src});
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (d > dist[v]) continue;
    if (v == dst) break;
    for (int w : g.usable_neighbors(v)) {
      if (w != dst && w != src && !allowed[static_cast<std::size_t>(w)]) continue;
      const double len =
          (g.vertices[static_cast<std::size_t>(w)].position -
           g.vertices[static_cast<std::size_t>(v)].position).norm();
      if (dist[v] + len < dist[w] - 1e-15) {
        dist[w] = dist[v] + len;
        prev[w] = v;
        queue.push({dist[w], w});
      }
    }
  }
  if (dist[dst] == kInf) return {};
  std::vector<int> path;
  for (int v = dst; v != -1; v = prev[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

// ---------------------------------------------------------------------------
// Greedy planning.

namespace {

bool unit_serves(const MetasurfaceUnit& unit, const AnglePair& angles,
                 double tolerance_deg) {
  const Steer* st = std::get_if<Steer>(&unit.function);
  if (!st) return false;
  return std::max(bearing_distance(st->from, angles.doa),
                  bearing_distance(st->to, angles.dod)) <= tolerance_deg;
}

}  // namespace

DeploymentPlan greedy_plan(const PweGraph& g, Inventory& inventory,
                           const PlanConfig& config) {
  DeploymentPlan plan;
  std::string failure = "no path from tx to rx";

  const std::size_t n = g.vertices.size();
  for (int round = 0; round <= config.retries; ++round) {
    auto initial = vertex_disjoint_paths(g, 1);
    if (initial.empty()) {
      plan.status = PlanStatus::Infeasible;
      plan.infeasible_reason = "no path from tx to rx";
      return plan;
    }
    std::vector<int> path = initial[0];
    std::map<int, Assignment> assigned;  // vertex -> assignment
    std::vector<bool> removed(n, false);
    bool round_failed = false;

    for (std::size_t iter = 0; iter <= n && !round_failed; ++iter) {
      const auto angles = required_angles(g, path);

      bool all_served = true;
      std::vector<int> unserved;
      for (std::size_t i = 1; i + 1 < path.size(); ++i) {
        const int v = path[i];
        const AnglePair& need = angles[i - 1];
        if (assigned.count(v)) continue;
        auto unit = match_unit(inventory, need.doa, need.dod,
                               config.tolerance_deg);
        if (unit) {
          inventory.mark_busy(unit->id);
          Assignment a;
          a.vertex = v;
          a.slot_id = g.vertices[static_cast<std::size_t>(v)].id;
          a.unit = *unit;
          a.placed = orient(*unit, g.vertices[static_cast<std::size_t>(v)].position);
          a.angles = need;
          assigned.emplace(v, std::move(a));
        } else {
          all_served = false;
          unserved.push_back(v);
        }
      }

      if (all_served) {
        plan.status = PlanStatus::Complete;
        plan.path = path;
        plan.assignments.clear();
        for (std::size_t i = 1; i + 1 < path.size(); ++i) {
          plan.assignments.push_back(assigned.at(path[i]));
        }
        return plan;
      }

      // Drop the unserved vertices and bridge each resulting gap with
      // Dijkstra over vertices that are neither removed nor busy.
      for (int v : unserved) removed[static_cast<std::size_t>(v)] = true;

      std::vector<int> kept;
      for (int v : path) {
        if (!removed[static_cast<std::size_t>(v)]) kept.push_back(v);
      }

      std::vector<bool> allowed(n, true);
      for (std::size_t v = 0; v < n; ++v) {
        if (removed[v] || assigned.count(static_cast<int>(v))) allowed[v] = false;
      }
      allowed[static_cast<std::size_t>(g.tx)] = false;
      allowed[static_cast<std::size_t>(g.rx)] = false;

      std::vector<int> repaired{kept.front()};
      std::vector<std::string> gap_list;
      for (std::size_t i = 0; i + 1 < kept.size(); ++i) {
        const int a = kept[i];
        const int b = kept[i + 1];
        std::vector<int> bridge;
        if (g.edge_between(a, b) &&
            (a != g.tx || g.is_user_edge(*g.edge_between(a, b))) &&
            (b != g.rx || g.is_ap_edge(*g.edge_between(a, b)))) {
          bridge = {a, b};
        } else {
          bridge = dijkstra_path(g, a, b, allowed);
        }
        if (bridge.empty()) {
          gap_list.push_back(g.vertices[static_cast<std::size_t>(a)].id + "-" +
                             g.vertices[static_cast<std::size_t>(b)].id);
          continue;
        }
        for (std::size_t j = 1; j < bridge.size(); ++j) {
          const int v = bridge[j];
          repaired.push_back(v);
          allowed[static_cast<std::size_t>(v)] = false;  // no reuse across gaps
        }
      }
      if (!gap_list.empty()) {
        failure = "unserved gaps:";
        for (const std::string& gap : gap_list) failure += " " + gap;
        round_failed = true;
        break;
      }
      path = repaired;

      // Re-validate standing assignments against the repaired path.
      const auto new_angles = required_angles(g, path);
      std::set<int> interior(path.begin() + 1, path.end() - 1);
      for (auto it = assigned.begin(); it != assigned.end();) {
        const int v = it->first;
        bool ok = interior.count(v) > 0;
        if (ok) {
          for (std::size_t i = 1; i + 1 < path.size(); ++i) {
            if (path[i] == v &&
                !unit_serves(it->second.unit, new_angles[i - 1],
                             config.tolerance_deg)) {
              ok = false;
            }
          }
        }
        if (!ok) {
          inventory.release(it->second.unit.id);
          it = assigned.erase(it);
        } else {
          ++it;
        }
      }
    }

    // Round over: release everything and retry from a clean slate.
    for (const auto& [v, a] : assigned) inventory.release(a.unit.id);
  }

  plan.status = PlanStatus::Infeasible;
  plan.infeasible_reason = failure;
  return plan;
}

DeploymentPlan task_uavs(const DeploymentPlan& plan, const UavFleet& fleet) {
  DeploymentPlan out = plan;
  if (out.status != PlanStatus::Complete) return out;

  std::vector<bool> taken(fleet.uavs.size(), false);
  out.uav_tasks.clear();
  for (const Assignment& a : out.assignments) {
    int best = -1;
    double best_trip = kInf;
    for (std::size_t i = 0; i < fleet.uavs.size(); ++i) {
      if (taken[i]) continue;
      const double trip = 2.0 * (a.placed.center - fleet.uavs[i].base).norm();
      if (trip <= fleet.uavs[i].range_budget && trip < best_trip) {
        best_trip = trip;
        best = static_cast<int>(i);
      }
    }
    if (best < 0) {
      out.status = PlanStatus::Infeasible;
      out.infeasible_reason = "energy: no UAV can reach slot " + a.slot_id;
      out.uav_tasks.clear();
      return out;
    }
    taken[static_cast<std::size_t>(best)] = true;
    out.uav_tasks.push_back(
        {fleet.uavs[static_cast<std::size_t>(best)].id, a.slot_id, best_trip});
  }
  return out;
}

}  // namespace pwe
