#pragma once

#include "pwe/orchestration.hpp"
#include "pwe/raytrace.hpp"
#include "pwe/scenario.hpp"

#include <cstddef>
#include <string>

namespace pwe {

struct RunFlags {
  std::size_t rays = 100000;
  unsigned seed = 0;  // recorded in the report; the pipeline is deterministic
  int max_bounces = 8;
  double max_range = 200.0;
  double tolerance_deg = 10.0;
  int k = 1;
  int retries = 10;
  bool no_pwe = false;
  unsigned threads = 1;
  PropagationMode* mode_override = nullptr;
};

struct RunReport {
  bool planned = false;  // false when --no-pwe skipped the planner
  DeploymentPlan plan;
  PweGraph graph;
  std::vector<PlacedUnit> deployment;
  RxReport rx;
  double elapsed_seconds = 0.0;
  std::string text;  // deterministic plain-text report (no timing)

  int exit_code() const;
};

/// Full pipeline: build graph, plan, task UAVs, place units, simulate.
/// With no_pwe the planner is skipped and the bare scene is simulated.
RunReport run(const ScenarioFile& scenario, const RunFlags& flags);

/// The deterministic stdout report. Timing is reported separately.
std::string format_report(const RunReport& report, const RunFlags& flags);

}  // namespace pwe
