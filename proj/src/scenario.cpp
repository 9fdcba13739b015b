#include "pwe/scenario.hpp"

#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace pwe {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& value, int line) {
  try {
    std::size_t used = 0;
    const double d = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return d;
  } catch (const std::exception&) {
    throw ParseError(line, "not a number: '" + value + "'");
  }
}

std::string format_number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// One [section] block as raw key/value pairs plus the line they came from.
struct Block {
  std::string name;
  int line = 0;
  std::map<std::string, std::pair<std::string, int>> entries;

  bool has(const std::string& key) const { return entries.count(key) > 0; }

  double number(const std::string& key) const {
    const auto it = entries.find(key);
    if (it == entries.end()) {
      throw ValidationError("[" + name + "] at line " + std::to_string(line) +
                            " missing key '" + key + "'");
    }
    return parse_number(it->second.first, it->second.second);
  }

  double number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  std::string text(const std::string& key) const {
    const auto it = entries.find(key);
    if (it == entries.end()) {
      throw ValidationError("[" + name + "] at line " + std::to_string(line) +
                            " missing key '" + key + "'");
    }
    return it->second.first;
  }

  void allow_only(const std::set<std::string>& keys) const {
    for (const auto& [key, value] : entries) {
      if (!keys.count(key)) {
        throw ParseError(value.second, "unknown key '" + key + "' in [" + name + "]");
      }
    }
  }
};

std::vector<Block> split_blocks(const std::string& text) {
  static const std::set<std::string> kSections = {
      "scene", "wall", "tx", "rx", "slot", "inventory", "unit", "uav"};
  std::vector<Block> blocks;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(lineno, "unterminated section header");
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (!kSections.count(name)) {
        throw ParseError(lineno, "unknown section '" + name + "'");
      }
      blocks.push_back(Block{name, lineno, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected key=value");
    if (blocks.empty()) throw ParseError(lineno, "key=value before any [section]");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(lineno, "empty key");
    if (!blocks.back().entries.emplace(key, std::make_pair(value, lineno)).second) {
      throw ParseError(lineno, "duplicate key '" + key + "'");
    }
  }
  return blocks;
}

}  // namespace

ScenarioFile parse_scenario(const std::string& text) {
  ScenarioFile out;
  int tx_count = 0;
  int rx_count = 0;
  bool saw_inventory = false;

  for (const Block& block : split_blocks(text)) {
    if (block.name == "scene") {
      block.allow_only({"frequency_ghz", "bounce_loss", "mode"});
      out.scene.model.frequency_hz = block.number_or("frequency_ghz", 2.4) * 1e9;
      out.scene.model.bounce_loss = block.number_or("bounce_loss", 0.01);
      if (block.has("mode")) {
        const std::string mode = block.text("mode");
        if (mode == "bounce_only") {
          out.scene.model.mode = PropagationMode::BounceOnly;
        } else if (mode == "friis") {
          out.scene.model.mode = PropagationMode::Friis;
        } else {
          throw ValidationError("unknown propagation mode '" + mode + "'");
        }
      }
      if (out.scene.model.bounce_loss < 0.0 || out.scene.model.bounce_loss >= 1.0) {
        throw ValidationError("bounce_loss must be in [0, 1)");
      }
      if (out.scene.model.frequency_hz <= 0.0) {
        throw ValidationError("frequency must be positive");
      }
    } else if (block.name == "wall") {
      block.allow_only({"x1", "y1", "x2", "y2", "material"});
      Wall w;
      w.a = {block.number("x1"), block.number("y1")};
      w.b = {block.number("x2"), block.number("y2")};
      if (block.has("material") && block.text("material") != "absorber") {
        throw ValidationError("unknown wall material '" + block.text("material") + "'");
      }
      if ((w.b - w.a).norm() < 1e-12) {
        throw ValidationError("wall at line " + std::to_string(block.line) +
                              " has zero length");
      }
      out.scene.walls.push_back(w);
    } else if (block.name == "tx") {
      if (++tx_count > 1) throw ValidationError("more than one [tx] section");
      block.allow_only({"x", "y", "z", "power_dbm", "lobe", "az"});
      Device& d = out.scene.tx;
      d.role = Role::Tx;
      d.position = {block.number("x"), block.number("y")};
      block.number_or("z", 0.0);  // parsed, ignored: tracing is planar
      d.tx_power_dbm = block.number("power_dbm");
      d.pattern.lobe_width_deg = block.number("lobe");
      d.pattern.boresight = Bearing::from_degrees(block.number("az"));
    } else if (block.name == "rx") {
      if (++rx_count > 1) throw ValidationError("more than one [rx] section");
      block.allow_only({"x", "y", "z", "lobe", "az", "capture"});
      Device& d = out.scene.rx;
      d.role = Role::Rx;
      d.position = {block.number("x"), block.number("y")};
      block.number_or("z", 0.0);
      d.pattern.lobe_width_deg = block.number("lobe");
      d.pattern.boresight = Bearing::from_degrees(block.number("az"));
      d.capture_radius = block.number_or("capture", 0.5);
      if (d.capture_radius <= 0.0) {
        throw ValidationError("capture radius must be positive");
      }
    } else if (block.name == "slot") {
      block.allow_only({"id", "x", "y"});
      out.slots.push_back(
          {block.text("id"), {block.number("x"), block.number("y")}, false});
    } else if (block.name == "inventory") {
      if (saw_inventory) throw ValidationError("more than one [inventory] section");
      saw_inventory = true;
      block.allow_only({"mode"});
      const std::string mode = block.text("mode");
      if (mode == "ideal") {
        out.inventory.mode = Inventory::Mode::Ideal;
      } else if (mode == "finite") {
        out.inventory.mode = Inventory::Mode::Finite;
      } else {
        throw ValidationError("unknown inventory mode '" + mode + "'");
      }
    } else if (block.name == "unit") {
      block.allow_only({"id", "from", "to", "width"});
      MetasurfaceUnit u;
      u.id = block.text("id");
      u.function = Steer{Bearing::from_degrees(block.number("from")),
                         Bearing::from_degrees(block.number("to"))};
      u.width = block.number_or("width", 1.0);
      if (u.width <= 0.0) throw ValidationError("unit width must be positive");
      out.inventory.units.push_back(std::move(u));
    } else if (block.name == "uav") {
      block.allow_only({"id", "x", "y", "range"});
      Uav uav;
      uav.id = block.text("id");
      uav.base = {block.number("x"), block.number("y")};
      uav.range_budget = block.number("range");
      if (uav.range_budget <= 0.0) {
        throw ValidationError("uav range must be positive");
      }
      out.fleet.uavs.push_back(std::move(uav));
    }
  }

  if (tx_count != 1) throw ValidationError("scenario requires exactly one [tx]");
  if (rx_count != 1) throw ValidationError("scenario requires exactly one [rx]");

  std::set<std::string> ids;
  for (const CandidateSlot& s : out.slots) {
    if (!ids.insert(s.id).second) {
      throw ValidationError("duplicate slot id '" + s.id + "'");
    }
  }
  ids.clear();
  for (const MetasurfaceUnit& u : out.inventory.units) {
    if (!ids.insert(u.id).second) {
      throw ValidationError("duplicate unit id '" + u.id + "'");
    }
  }
  ids.clear();
  for (const Uav& u : out.fleet.uavs) {
    if (!ids.insert(u.id).second) {
      throw ValidationError("duplicate uav id '" + u.id + "'");
    }
  }
  return out;
}

std::string render_scenario(const ScenarioFile& s) {
  std::ostringstream out;
  out << "[scene]\n";
  out << "frequency_ghz=" << format_number(s.scene.model.frequency_hz / 1e9) << "\n";
  out << "bounce_loss=" << format_number(s.scene.model.bounce_loss) << "\n";
  out << "mode="
      << (s.scene.model.mode == PropagationMode::BounceOnly ? "bounce_only"
                                                            : "friis")
      << "\n";
  for (const Wall& w : s.scene.walls) {
    out << "\n[wall]\n";
    out << "x1=" << format_number(w.a.x()) << "\ny1=" << format_number(w.a.y())
        << "\nx2=" << format_number(w.b.x()) << "\ny2=" << format_number(w.b.y())
        << "\nmaterial=absorber\n";
  }
  out << "\n[tx]\n";
  out << "x=" << format_number(s.scene.tx.position.x()) << "\n";
  out << "y=" << format_number(s.scene.tx.position.y()) << "\n";
  out << "power_dbm=" << format_number(s.scene.tx.tx_power_dbm) << "\n";
  out << "lobe=" << format_number(s.scene.tx.pattern.lobe_width_deg) << "\n";
  out << "az=" << format_number(s.scene.tx.pattern.boresight.degrees()) << "\n";
  out << "\n[rx]\n";
  out << "x=" << format_number(s.scene.rx.position.x()) << "\n";
  out << "y=" << format_number(s.scene.rx.position.y()) << "\n";
  out << "lobe=" << format_number(s.scene.rx.pattern.lobe_width_deg) << "\n";
  out << "az=" << format_number(s.scene.rx.pattern.boresight.degrees()) << "\n";
  out << "capture=" << format_number(s.scene.rx.capture_radius) << "\n";
  for (const CandidateSlot& slot : s.slots) {
    out << "\n[slot]\n";
    out << "id=" << slot.id << "\n";
    out << "x=" << format_number(slot.position.x()) << "\n";
    out << "y=" << format_number(slot.position.y()) << "\n";
  }
  out << "\n[inventory]\n";
  out << "mode=" << (s.inventory.mode == Inventory::Mode::Ideal ? "ideal" : "finite")
      << "\n";
  for (const MetasurfaceUnit& u : s.inventory.units) {
    const Steer* st = std::get_if<Steer>(&u.function);
    if (!st) continue;  // only Steer units have a file form
    out << "\n[unit]\n";
    out << "id=" << u.id << "\n";
    out << "from=" << format_number(st->from.degrees()) << "\n";
    out << "to=" << format_number(st->to.degrees()) << "\n";
    out << "width=" << format_number(u.width) << "\n";
  }
  for (const Uav& u : s.fleet.uavs) {
    out << "\n[uav]\n";
    out << "id=" << u.id << "\n";
    out << "x=" << format_number(u.base.x()) << "\n";
    out << "y=" << format_number(u.base.y()) << "\n";
    out << "range=" << format_number(u.range_budget) << "\n";
  }
  return out.str();
}

bool operator==(const ScenarioFile& a, const ScenarioFile& b) {
  return render_scenario(a) == render_scenario(b);
}

}  // namespace pwe
