#pragma once

#include <string>

#include "celestial/mesh.hpp"
#include "celestial/walks.hpp"

namespace celestial {

/// SVG 1.1 drawing of a mesh with a walk on top: gray edges, orange dots at
/// obtuse corners, a red path through face centroids and crossed-edge
/// midpoints, and the query as a black disk. Output is deterministic.
std::string render_trace_svg(const Mesh& m, const TraceDocument& trace);

}  // namespace celestial
