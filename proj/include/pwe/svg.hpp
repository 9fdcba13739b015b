#pragma once

#include "pwe/raytrace.hpp"
#include "pwe/scenario.hpp"

#include <string>
#include <vector>

namespace pwe {

/// Standalone SVG 1.1 picture of a run: walls in red, devices, slots,
/// placed units, and one polyline per trace with opacity scaled by
/// log-power.
std::string render_svg(const std::vector<Trace>& traces, const Scene& scene,
                       const std::vector<CandidateSlot>& slots,
                       const std::vector<PlacedUnit>& deployment);

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Writes render_svg output to `path`. Throws IoError on failure.
void export_svg(const std::vector<Trace>& traces, const Scene& scene,
                const std::vector<CandidateSlot>& slots,
                const std::vector<PlacedUnit>& deployment,
                const std::string& path);

}  // namespace pwe
