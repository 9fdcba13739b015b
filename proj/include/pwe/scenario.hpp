#pragma once

#include "pwe/metasurface.hpp"
#include "pwe/orchestration.hpp"
#include "pwe/scene.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace pwe {

/// Everything a .pwe file describes: the radio scene plus the planning
/// inputs (candidate slots, unit inventory, UAV fleet).
struct ScenarioFile {
  Scene scene;
  std::vector<CandidateSlot> slots;
  Inventory inventory;
  UavFleet fleet;

  friend bool operator==(const ScenarioFile&, const ScenarioFile&);
};

struct ParseError : std::runtime_error {
  ParseError(int line, const std::string& reason)
      : std::runtime_error("line " + std::to_string(line) + ": " + reason),
        line(line) {}
  int line;
};

struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Parses the line-oriented scenario format: `[section]` headers,
/// `key=value` lines, `#` comments. Unknown sections or keys are
/// errors. Lengths in meters, angles in degrees, powers in dBm.
ScenarioFile parse_scenario(const std::string& text);

/// Canonical serialization; parse_scenario(render_scenario(s)) == s.
std::string render_scenario(const ScenarioFile& s);

}  // namespace pwe
