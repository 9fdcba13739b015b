#include "pwe/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

namespace pwe {

namespace {

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

}  // namespace

int RunReport::exit_code() const {
  if (!planned) return 0;
  return plan.status == PlanStatus::Complete ? 0 : 2;
}

RunReport run(const ScenarioFile& scenario, const RunFlags& flags) {
  const auto start = std::chrono::steady_clock::now();

  RunReport report;
  Scene scene = scenario.scene;
  if (flags.mode_override) scene.model.mode = *flags.mode_override;

  if (!flags.no_pwe) {
    report.planned = true;
    report.graph = build_graph(scene, scenario.slots);
    Inventory inventory = scenario.inventory;
    PlanConfig config{flags.tolerance_deg, flags.retries};
    report.plan = greedy_plan(report.graph, inventory, config);
    if (report.plan.status == PlanStatus::Complete &&
        !scenario.fleet.uavs.empty()) {
      report.plan = task_uavs(report.plan, scenario.fleet);
    }
    if (report.plan.status == PlanStatus::Complete) {
      for (const Assignment& a : report.plan.assignments) {
        report.deployment.push_back(a.placed);
      }
    }
  }

  TraceConfig trace_config;
  trace_config.max_bounces = flags.max_bounces;
  trace_config.max_range = flags.max_range;
  trace_config.tolerance_deg = flags.tolerance_deg;
  trace_config.threads = flags.threads;
  report.rx = simulate(scene, report.deployment, flags.rays, trace_config);

  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  report.text = format_report(report, flags);
  return report;
}

std::string format_report(const RunReport& report, const RunFlags& flags) {
  std::ostringstream out;
  out << "run: rays=" << flags.rays << " seed=" << flags.seed
      << " max_bounces=" << flags.max_bounces << " tolerance="
      << fmt("%.2f", flags.tolerance_deg) << "\n";

  if (flags.no_pwe) {
    out << "plan: disabled (--no-pwe)\n";
  } else if (report.plan.status == PlanStatus::Complete) {
    out << "plan: Complete\n";
    out << "path:";
    for (int v : report.plan.path) {
      out << " " << report.graph.vertices[static_cast<std::size_t>(v)].id;
    }
    out << "\n";
    out << "assignments: " << report.plan.assignments.size() << "\n";
    for (const Assignment& a : report.plan.assignments) {
      const Steer* st = std::get_if<Steer>(&a.unit.function);
      out << "  slot " << a.slot_id << " (" << fmt("%.2f", a.placed.center.x())
          << ", " << fmt("%.2f", a.placed.center.y()) << ") unit " << a.unit.id
          << " steer " << fmt("%.2f", st ? st->from.degrees() : 0.0) << " -> "
          << fmt("%.2f", st ? st->to.degrees() : 0.0) << " normal "
          << fmt("%.2f", a.placed.normal.degrees()) << "\n";
    }
    for (const UavTask& t : report.plan.uav_tasks) {
      out << "  uav " << t.uav_id << " -> slot " << t.slot_id << " travel "
          << fmt("%.2f", t.travel_distance) << " m\n";
    }
  } else {
    out << "plan: Infeasible (" << report.plan.infeasible_reason << ")\n";
  }

  const auto& counts = report.rx.ray_counts;
  out << "rays: launched=" << report.rx.rays_launched
      << " received=" << counts[static_cast<std::size_t>(Terminal::Received)]
      << " absorbed=" << counts[static_cast<std::size_t>(Terminal::Absorbed)]
      << " escaped=" << counts[static_cast<std::size_t>(Terminal::Escaped)]
      << " max_bounces=" << counts[static_cast<std::size_t>(Terminal::MaxBounces)]
      << "\n";

  if (report.rx.received_dbm) {
    out << "received power: " << fmt("%.2f", *report.rx.received_dbm) << " dBm ("
        << fmt("%.6e", report.rx.received_mw) << " mW)\n";
  } else {
    out << "received power: No signal\n";
  }
  return out.str();
}

}  // namespace pwe
