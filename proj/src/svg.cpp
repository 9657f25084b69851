#include "celestial/svg.hpp"

#include <algorithm>
#include <cmath>

#include "celestial/generators.hpp"
#include "celestial/mesh_io.hpp"
#include "celestial/predicates.hpp"

namespace celestial {
namespace {

constexpr double kCanvas = 800.0;
constexpr double kMargin = 20.0;

struct Viewport {
  double xmin, ymax, scale;

  std::string x(double v) const { return format_double(round3(kMargin + (v - xmin) * scale)); }
  std::string y(double v) const { return format_double(round3(kMargin + (ymax - v) * scale)); }

  static double round3(double v) { return std::round(v * 1000.0) / 1000.0; }
};

}  // namespace

std::string render_trace_svg(const Mesh& m, const TraceDocument& trace) {
  BoundingBox box = bounding_box(m);
  box.xmin = std::min(box.xmin, trace.query.x);
  box.xmax = std::max(box.xmax, trace.query.x);
  box.ymin = std::min(box.ymin, trace.query.y);
  box.ymax = std::max(box.ymax, trace.query.y);
  const double extent = std::max({box.width(), box.height(), 1e-12});
  const Viewport vp{box.xmin, box.ymax, (kCanvas - 2 * kMargin) / extent};
  const std::string width = format_double(Viewport::round3(box.width() * vp.scale + 2 * kMargin));
  const std::string height = format_double(Viewport::round3(box.height() * vp.scale + 2 * kMargin));

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + width + "\" height=\"" +
         height + "\" viewBox=\"0 0 " + width + " " + height + "\">\n";

  out += "<g id=\"edges\" stroke=\"gray\" stroke-width=\"0.5\" fill=\"none\">\n";
  for (std::size_t i = 0; i < m.num_halfedges(); ++i) {
    const HalfEdgeId h(i);
    if (m.twin(h) < h) continue;
    const Point a = m.origin_point(h), b = m.target_point(h);
    out += "<line x1=\"" + vp.x(a.x) + "\" y1=\"" + vp.y(a.y) + "\" x2=\"" + vp.x(b.x) + "\" y2=\"" +
           vp.y(b.y) + "\"/>\n";
  }
  out += "</g>\n";

  out += "<g id=\"obtuse\" fill=\"orange\">\n";
  for (std::size_t i = 0; i < m.num_halfedges(); ++i) {
    const HalfEdgeId h(i);
    if (m.is_outer(m.face(h))) continue;
    const Point a = m.origin_point(h), b = m.target_point(h), c = m.target_point(m.next(h));
    if (!obtuse(a, b, c)) continue;
    // Nudge the dot into the face so corners shared by several faces stay distinct.
    const Point inside = b + 0.12 * ((a - b) + (c - b));
    out += "<circle cx=\"" + vp.x(inside.x) + "\" cy=\"" + vp.y(inside.y) + "\" r=\"2\"/>\n";
  }
  out += "</g>\n";

  if (!trace.trace.visited_faces.empty()) {
    std::string pts;
    auto add = [&](Point p) {
      if (!pts.empty()) pts += ' ';
      pts += vp.x(p.x) + "," + vp.y(p.y);
    };
    add(face_centroid(m, trace.trace.visited_faces.front()));
    for (const WalkStep& s : trace.trace.steps) {
      if (s.action != StepAction::CrossTwin) continue;
      add(0.5 * (m.origin_point(s.edge) + m.target_point(s.edge)));
      add(face_centroid(m, m.face(s.edge)));
    }
    out += "<polyline id=\"walk\" fill=\"none\" stroke=\"red\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
  }

  out += "<circle id=\"query\" cx=\"" + vp.x(trace.query.x) + "\" cy=\"" + vp.y(trace.query.y) +
         "\" r=\"4\" fill=\"black\"/>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace celestial
