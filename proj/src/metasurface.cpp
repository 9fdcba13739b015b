#include "pwe/metasurface.hpp"

#include <algorithm>
#include <limits>

namespace pwe {

Bearing design_from(const WaveFunction& f) {
  return std::visit([](const auto& v) { return v.from; }, f);
}

MetasurfaceUnit* Inventory::find(const std::string& id) {
  auto it = std::find_if(units.begin(), units.end(),
                         [&](const MetasurfaceUnit& u) { return u.id == id; });
  return it == units.end() ? nullptr : &*it;
}

void Inventory::mark_busy(const std::string& id) {
  if (MetasurfaceUnit* u = find(id)) u->busy = true;
}

void Inventory::release(const std::string& id) {
  if (MetasurfaceUnit* u = find(id)) u->busy = false;
}

PlacedUnit orient(const MetasurfaceUnit& unit, const Point2& center) {
  Bearing normal;
  if (const Steer* st = std::get_if<Steer>(&unit.function)) {
    const Vec2 bisector = st->to.unit() - st->from.unit();
    if (bisector.norm() < 1e-12) {
      normal = st->from;  // pass-through: face along the travel direction
    } else {
      normal = Bearing::of(bisector);
    }
  } else {
    normal = design_from(unit.function).reversed();  // face the incoming wave
  }
  const Vec2 along = Bearing::from_degrees(normal.degrees() + 90.0).unit();
  const Vec2 half = (unit.width / 2.0) * along;
  return PlacedUnit{unit, center, Segment{center - half, center + half}, normal};
}

std::vector<Ray> scatter(const PlacedUnit& placed, const Ray& incident,
                         double tolerance_deg, double bounce_loss) {
  const auto hit = ray_cast(incident.origin, incident.direction,
                            {Obstacle{placed.segment, 0}},
                            std::numeric_limits<double>::max());
  if (!hit) throw std::logic_error("scatter: ray misses the placed segment");

  const Point2 at = hit->point;
  const double travelled = incident.path_length + hit->distance;
  const int bounces = incident.bounces + 1;

  if (bearing_distance(incident.direction, design_from(placed.unit.function)) >
      tolerance_deg) {
    return {};  // off-design incidence is absorbed
  }

  const double p_out = incident.power_mw * (1.0 - bounce_loss);
  std::vector<Ray> out;
  if (const Steer* st = std::get_if<Steer>(&placed.unit.function)) {
    out.push_back(Ray{at, st->to, p_out, bounces, travelled});
  } else if (const Split* sp = std::get_if<Split>(&placed.unit.function)) {
    const double each = p_out / static_cast<double>(sp->outs.size());
    for (const Bearing& dir : sp->outs) {
      out.push_back(Ray{at, dir, each, bounces, travelled});
    }
  }
  // Absorb: empty
  return out;
}

std::optional<MetasurfaceUnit> match_unit(Inventory& inventory,
                                          Bearing required_from,
                                          Bearing required_to,
                                          double tolerance_deg) {
  if (inventory.mode == Inventory::Mode::Ideal) {
    MetasurfaceUnit unit;
    unit.id = "ideal-" + std::to_string(inventory.units.size());
    unit.function = Steer{required_from, required_to};
    inventory.units.push_back(unit);
    return unit;
  }

  const MetasurfaceUnit* best = nullptr;
  double best_score = std::numeric_limits<double>::max();
  for (const MetasurfaceUnit& u : inventory.units) {
    if (u.busy) continue;
    const Steer* st = std::get_if<Steer>(&u.function);
    if (!st) continue;
    const double score = std::max(bearing_distance(st->from, required_from),
                                  bearing_distance(st->to, required_to));
    if (score < best_score) {
      best_score = score;
      best = &u;
    }
  }
  if (!best || best_score > tolerance_deg) return std::nullopt;
  return *best;
}

}  // namespace pwe
