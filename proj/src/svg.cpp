#include "pwe/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pwe {

namespace {

constexpr double kScale = 60.0;  // px per meter
constexpr double kMargin = 1.0;  // meters around the content

struct Bounds {
  double min_x = 0.0, min_y = 0.0, max_x = 1.0, max_y = 1.0;
  bool first = true;

  void add(const Point2& p) {
    if (first) {
      min_x = max_x = p.x();
      min_y = max_y = p.y();
      first = false;
      return;
    }
    min_x = std::min(min_x, p.x());
    max_x = std::max(max_x, p.x());
    min_y = std::min(min_y, p.y());
    max_y = std::max(max_y, p.y());
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string render_svg(const std::vector<Trace>& traces, const Scene& scene,
                       const std::vector<CandidateSlot>& slots,
                       const std::vector<PlacedUnit>& deployment) {
  Bounds b;
  for (const Wall& w : scene.walls) {
    b.add(w.a);
    b.add(w.b);
  }
  b.add(scene.tx.position);
  b.add(scene.rx.position);
  for (const CandidateSlot& s : slots) b.add(s.position);
  for (const PlacedUnit& u : deployment) {
    b.add(u.segment.a);
    b.add(u.segment.b);
  }
  // Traces are left out of the bounds: escaped rays run to max range
  // and would dwarf the floorplan. They clip at the viewBox instead.

  const double w_px = (b.max_x - b.min_x + 2 * kMargin) * kScale;
  const double h_px = (b.max_y - b.min_y + 2 * kMargin) * kScale;
  // Scene y grows upward, SVG y downward.
  const auto sx = [&](double x) { return (x - b.min_x + kMargin) * kScale; };
  const auto sy = [&](double y) { return h_px - (y - b.min_y + kMargin) * kScale; };

  double max_power = 0.0;
  for (const Trace& t : traces) {
    for (double p : t.segment_power_mw) max_power = std::max(max_power, p);
  }

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << fmt(w_px) << "\" height=\"" << fmt(h_px) << "\" viewBox=\"0 0 "
      << fmt(w_px) << " " << fmt(h_px) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (const Trace& t : traces) {
    const double p0 = t.segment_power_mw.empty() ? 0.0 : t.segment_power_mw.front();
    // Opacity from log-power: full at the peak, fading over 40 dB.
    double opacity = 0.06;
    if (p0 > 0.0 && max_power > 0.0) {
      const double db_down = 10.0 * std::log10(max_power / p0);
      opacity = std::clamp(1.0 - db_down / 40.0, 0.06, 1.0);
    }
    out << "<polyline fill=\"none\" stroke=\""
        << (t.terminal == Terminal::Received ? "#1a7f37" : "#9db2c8")
        << "\" stroke-width=\"1\" stroke-opacity=\"" << fmt(opacity)
        << "\" points=\"";
    for (std::size_t i = 0; i < t.polyline.size(); ++i) {
      if (i) out << " ";
      out << fmt(sx(t.polyline[i].x())) << "," << fmt(sy(t.polyline[i].y()));
    }
    out << "\"/>\n";
  }

  for (const CandidateSlot& s : slots) {
    out << "<rect x=\"" << fmt(sx(s.position.x()) - 3) << "\" y=\""
        << fmt(sy(s.position.y()) - 3)
        << "\" width=\"6\" height=\"6\" fill=\"#f2b2b2\"/>\n";
  }

  for (const PlacedUnit& u : deployment) {
    out << "<line x1=\"" << fmt(sx(u.segment.a.x())) << "\" y1=\""
        << fmt(sy(u.segment.a.y())) << "\" x2=\"" << fmt(sx(u.segment.b.x()))
        << "\" y2=\"" << fmt(sy(u.segment.b.y()))
        << "\" stroke=\"#1f4fd8\" stroke-width=\"4\"/>\n";
  }

  for (const Wall& w : scene.walls) {
    out << "<line x1=\"" << fmt(sx(w.a.x())) << "\" y1=\"" << fmt(sy(w.a.y()))
        << "\" x2=\"" << fmt(sx(w.b.x())) << "\" y2=\"" << fmt(sy(w.b.y()))
        << "\" stroke=\"red\" stroke-width=\"5\"/>\n";
  }

  out << "<circle cx=\"" << fmt(sx(scene.tx.position.x())) << "\" cy=\""
      << fmt(sy(scene.tx.position.y()))
      << "\" r=\"6\" fill=\"#222\"/>\n";
  out << "<circle cx=\"" << fmt(sx(scene.rx.position.x())) << "\" cy=\""
      << fmt(sy(scene.rx.position.y()))
      << "\" r=\"" << fmt(scene.rx.capture_radius * kScale)
      << "\" fill=\"none\" stroke=\"#222\" stroke-dasharray=\"4 3\"/>\n";
  out << "<circle cx=\"" << fmt(sx(scene.rx.position.x())) << "\" cy=\""
      << fmt(sy(scene.rx.position.y())) << "\" r=\"6\" fill=\"#555\"/>\n";
  out << "</svg>\n";
  return out.str();
}

void export_svg(const std::vector<Trace>& traces, const Scene& scene,
                const std::vector<CandidateSlot>& slots,
                const std::vector<PlacedUnit>& deployment,
                const std::string& path) {
  std::ofstream file(path, std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << render_svg(traces, scene, slots, deployment);
  if (!file) throw IoError("write to '" + path + "' failed");
}

}  // namespace pwe
