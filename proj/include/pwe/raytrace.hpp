#pragma once

#include "pwe/metasurface.hpp"
#include "pwe/scene.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace pwe {

enum class Terminal { Absorbed, Escaped, Received, MaxBounces };

inline constexpr std::size_t kTerminalCount = 4;

struct Trace {
  std::vector<Point2> polyline;            // >= 2 points
  Terminal terminal = Terminal::Escaped;
  std::vector<double> segment_power_mw;    // power at the start of each leg
};

/// Where every launched milliwatt went. In BounceOnly mode the buckets
/// sum to the transmit power; `dissipated` holds bounce losses plus the
/// receive-lobe mismatch of captured rays.
struct PowerLedger {
  double received = 0.0;
  double wall_absorbed = 0.0;
  double off_design_absorbed = 0.0;
  double escaped = 0.0;
  double dissipated = 0.0;
  double truncated = 0.0;

  double total() const {
    return received + wall_absorbed + off_design_absorbed + escaped +
           dissipated + truncated;
  }
};

struct RxReport {
  double received_mw = 0.0;
  std::optional<double> received_dbm;  // absent means "no signal"
  std::array<std::size_t, kTerminalCount> ray_counts{};  // by Terminal
  PowerLedger ledger;
  std::vector<Trace> traces;
  std::size_t rays_launched = 0;
};

struct TraceConfig {
  int max_bounces = 8;
  double max_range = 200.0;       // meters
  double tolerance_deg = 10.0;    // scatter angular tolerance
  bool keep_traces = true;
  unsigned threads = 1;
};

struct InvalidScene : std::runtime_error {
  explicit InvalidScene(const std::string& what) : std::runtime_error(what) {}
};

/// Traces one launched ray to all of its terminals (Split branches).
/// Appends traces and accrues the ledger and terminal counts.
void propagate(const Ray& ray, const Scene& scene,
               const std::vector<PlacedUnit>& deployment,
               const TraceConfig& config, std::vector<Trace>& traces,
               PowerLedger& ledger,
               std::array<std::size_t, kTerminalCount>& counts);

/// Launches n_rays from the Tx, propagates all of them, and aggregates
/// receiver contributions. Deterministic for fixed inputs; with
/// threads > 1 the reduction runs in fixed chunk order.
RxReport simulate(const Scene& scene, const std::vector<PlacedUnit>& deployment,
                  std::size_t n_rays, const TraceConfig& config = {});

}  // namespace pwe
