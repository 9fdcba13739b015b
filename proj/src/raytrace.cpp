#include "pwe/raytrace.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace pwe {

namespace {

constexpr double kSpeedOfLight = 299792458.0;

double friis_spread(const PowerModel& model, double distance) {
  if (distance <= 0.0) throw ZeroDistance{};
  const double lambda = kSpeedOfLight / model.frequency_hz;
  const double s = lambda / (4.0 * M_PI * distance);
  return s * s;
}

struct WorkItem {
  Ray ray;
  std::vector<Point2> polyline;      // ends at ray.origin
  std::vector<double> leg_power_mw;  // one per completed leg
};

std::vector<Obstacle> make_obstacles(const Scene& scene,
                                     const std::vector<PlacedUnit>& deployment) {
  std::vector<Obstacle> obstacles;
  obstacles.reserve(scene.walls.size() + deployment.size());
  for (std::size_t i = 0; i < scene.walls.size(); ++i) {
    obstacles.push_back({Segment{scene.walls[i].a, scene.walls[i].b},
                         -1 - static_cast<int>(i)});
  }
  for (std::size_t i = 0; i < deployment.size(); ++i) {
    obstacles.push_back({deployment[i].segment, static_cast<int>(i)});
  }
  return obstacles;
}

void finish(WorkItem&& item, const Point2& end, Terminal terminal,
            const TraceConfig& config, std::vector<Trace>& traces,
            std::array<std::size_t, kTerminalCount>& counts) {
  counts[static_cast<std::size_t>(terminal)]++;
  if (!config.keep_traces) return;
  item.polyline.push_back(end);
  item.leg_power_mw.push_back(item.ray.power_mw);
  traces.push_back(Trace{std::move(item.polyline), terminal,
                         std::move(item.leg_power_mw)});
}

}  // namespace

void propagate(const Ray& ray, const Scene& scene,
               const std::vector<PlacedUnit>& deployment,
               const TraceConfig& config, std::vector<Trace>& traces,
               PowerLedger& ledger,
               std::array<std::size_t, kTerminalCount>& counts) {
  const std::vector<Obstacle> obstacles = make_obstacles(scene, deployment);
  const bool friis = scene.model.mode == PropagationMode::Friis;

  std::vector<WorkItem> work;
  work.push_back(WorkItem{ray, {ray.origin}, {}});

  while (!work.empty()) {
    WorkItem item = std::move(work.back());
    work.pop_back();
    const Ray& r = item.ray;
    const Vec2 u = r.direction.unit();

    const auto hit = ray_cast(r.origin, r.direction, obstacles, config.max_range);
    const double leg_end = hit ? hit->distance : config.max_range;

    // Receiver capture: closest approach of this leg to the Rx point,
    // taken before any obstacle at greater distance.
    const double t_closest =
        std::clamp((scene.rx.position - r.origin).dot(u), 0.0, leg_end);
    const Point2 closest = r.origin + t_closest * u;
    const double miss = (closest - scene.rx.position).norm();
    const double w_rx = antenna_weight(scene.rx.pattern, r.direction.reversed());

    if (miss <= scene.rx.capture_radius && w_rx > 0.0 &&
        (!hit || t_closest <= hit->distance)) {
      double p_at_rx = r.power_mw;
      if (friis) p_at_rx *= friis_spread(scene.model, r.path_length + t_closest);
      ledger.received += p_at_rx * w_rx;
      ledger.dissipated += p_at_rx * (1.0 - w_rx);
      finish(std::move(item), closest, Terminal::Received, config, traces, counts);
      continue;
    }

    if (!hit) {
      ledger.escaped += r.power_mw;
      finish(std::move(item), r.origin + config.max_range * u, Terminal::Escaped,
             config, traces, counts);
      continue;
    }

    if (hit->tag < 0) {  // wall
      ledger.wall_absorbed += r.power_mw;
      finish(std::move(item), hit->point, Terminal::Absorbed, config, traces,
             counts);
      continue;
    }

    // Placed unit.
    if (r.bounces >= config.max_bounces) {
      ledger.truncated += r.power_mw;
      finish(std::move(item), hit->point, Terminal::MaxBounces, config, traces,
             counts);
      continue;
    }

    const PlacedUnit& unit = deployment[static_cast<std::size_t>(hit->tag)];
    std::vector<Ray> outs =
        scatter(unit, r, config.tolerance_deg, scene.model.bounce_loss);
    if (outs.empty()) {
      ledger.off_design_absorbed += r.power_mw;
      finish(std::move(item), hit->point, Terminal::Absorbed, config, traces,
             counts);
      continue;
    }

    ledger.dissipated += r.power_mw * scene.model.bounce_loss;
    for (std::size_t i = 0; i < outs.size(); ++i) {
      WorkItem child;
      child.ray = outs[i];
      if (config.keep_traces) {
        child.polyline = item.polyline;
        child.leg_power_mw = item.leg_power_mw;
        child.polyline.push_back(hit->point);
        child.leg_power_mw.push_back(r.power_mw);
      }
      work.push_back(std::move(child));
    }
  }
}

namespace {

struct Partial {
  std::vector<Trace> traces;
  PowerLedger ledger;
  std::array<std::size_t, kTerminalCount> counts{};
};

Partial run_chunk(const std::vector<Ray>& rays, std::size_t begin, std::size_t end,
                  const Scene& scene, const std::vector<PlacedUnit>& deployment,
                  const TraceConfig& config) {
  Partial part;
  for (std::size_t i = begin; i < end; ++i) {
    propagate(rays[i], scene, deployment, config, part.traces, part.ledger,
              part.counts);
  }
  return part;
}

}  // namespace

RxReport simulate(const Scene& scene, const std::vector<PlacedUnit>& deployment,
                  std::size_t n_rays, const TraceConfig& config) {
  if (scene.tx.role != Role::Tx || scene.rx.role != Role::Rx) {
    throw InvalidScene("scene requires one Tx and one Rx device");
  }
  if (n_rays == 0) throw InvalidScene("n_rays must be >= 1");

  const std::vector<Ray> rays = launch_rays(scene.tx, n_rays);

  const unsigned threads = std::max(1u, config.threads);
  std::vector<Partial> parts;
  if (threads == 1) {
    parts.push_back(run_chunk(rays, 0, rays.size(), scene, deployment, config));
  } else {
    parts.resize(threads);
    std::vector<std::thread> pool;
    const std::size_t chunk = (rays.size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = std::min<std::size_t>(t * chunk, rays.size());
      const std::size_t end = std::min<std::size_t>(begin + chunk, rays.size());
      pool.emplace_back([&, t, begin, end] {
        parts[t] = run_chunk(rays, begin, end, scene, deployment, config);
      });
    }
    for (auto& th : pool) th.join();
  }

  RxReport report;
  report.rays_launched = n_rays;
  for (Partial& part : parts) {  // fixed chunk order
    report.ledger.received += part.ledger.received;
    report.ledger.wall_absorbed += part.ledger.wall_absorbed;
    report.ledger.off_design_absorbed += part.ledger.off_design_absorbed;
    report.ledger.escaped += part.ledger.escaped;
    report.ledger.dissipated += part.ledger.dissipated;
    report.ledger.truncated += part.ledger.truncated;
    for (std::size_t i = 0; i < kTerminalCount; ++i) {
      report.ray_counts[i] += part.counts[i];
    }
    report.traces.insert(report.traces.end(),
                         std::make_move_iterator(part.traces.begin()),
                         std::make_move_iterator(part.traces.end()));
  }
  report.received_mw = report.ledger.received;
  if (report.received_mw > 0.0) {
    report.received_dbm = mw_to_dbm(report.received_mw);
  }
  return report;
}

}  // namespace pwe
