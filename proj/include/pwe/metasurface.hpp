#pragma once

#include "pwe/geometry.hpp"
#include "pwe/radio.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace pwe {

// Wave-manipulation functions of a passive unit. All angles are travel
// bearings: the direction the wave moves, not the direction it came from.
struct Steer {
  Bearing from;
  Bearing to;
};

struct Absorb {
  Bearing from;
};

struct Split {
  Bearing from;
  std::vector<Bearing> outs;  // >= 2 distinct bearings
};

using WaveFunction = std::variant<Steer, Absorb, Split>;

Bearing design_from(const WaveFunction& f);

struct MetasurfaceUnit {
  std::string id;
  WaveFunction function;
  double width = 1.0;  // meters, footprint of the 1x1 m surface in the plane
  bool busy = false;
};

/// Stock of units. Ideal mode synthesizes a fresh Steer unit for any
/// requested angle pair.
struct Inventory {
  enum class Mode { Finite, Ideal };
  Mode mode = Mode::Ideal;
  std::vector<MetasurfaceUnit> units;

  MetasurfaceUnit* find(const std::string& id);
  void mark_busy(const std::string& id);
  void release(const std::string& id);
};

struct PlacedUnit {
  MetasurfaceUnit unit;
  Point2 center{0.0, 0.0};
  Segment segment;  // length = unit.width, perpendicular to normal
  Bearing normal;
};

/// Embeds a unit at `center`. For Steer the normal is the mirror
/// bisector of the incident and departing travel directions; a
/// degenerate Steer (to == from) faces the incoming wave.
PlacedUnit orient(const MetasurfaceUnit& unit, const Point2& center);

/// Response to a ray that hits the placed segment. On-design hits
/// (incident bearing within tolerance of the function's design angle)
/// produce the declared outputs at (1 - bounce_loss) total power;
/// anything else is absorbed.
std::vector<Ray> scatter(const PlacedUnit& placed, const Ray& incident,
                         double tolerance_deg, double bounce_loss);

/// Best non-busy Steer unit for the requested angle pair, scored by
/// max(|d_from|, |d_to|) wrapped; absent if none scores within
/// tolerance. Ideal inventories synthesize an exact unit. Never marks
/// units busy.
std::optional<MetasurfaceUnit> match_unit(Inventory& inventory,
                                          Bearing required_from,
                                          Bearing required_to,
                                          double tolerance_deg);

}  // namespace pwe
