#include "celestial/generators.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "celestial/predicates.hpp"
#include "celestial/rng.hpp"
#include "triangle_soup.hpp"

namespace celestial {
namespace {

using detail::TriangleSoup;

std::vector<std::vector<std::uint32_t>> to_cycles(const TriangleSoup& soup) {
  std::vector<std::vector<std::uint32_t>> cycles;
  cycles.reserve(soup.triangles().size());
  for (const auto& t : soup.triangles()) cycles.push_back({t[0], t[1], t[2]});
  return cycles;
}

std::pair<std::uint32_t, std::uint32_t> sorted_pair(std::uint32_t a, std::uint32_t b) {
  return a < b ? std::pair{a, b} : std::pair{b, a};
}

// Restores the empty-circle property around the queued edges.
void legalize(TriangleSoup& soup, std::deque<std::pair<std::uint32_t, std::uint32_t>>& queue) {
  const auto pts = soup.points();
  std::size_t flips = 0;
  const std::size_t flip_limit = 64 * pts.size() * pts.size() + 1024;
  while (!queue.empty()) {
    const auto [u, v] = queue.front();
    queue.pop_front();
    const auto r1 = soup.find(u, v);
    const auto r2 = soup.find(v, u);
    if (!r1 || !r2) continue;
    const std::uint32_t c = soup.opposite(*r1);
    const std::uint32_t d = soup.opposite(*r2);
    const int s = incircle(pts[u], pts[v], pts[c], pts[d]);
    const bool illegal = s > 0 || (s == 0 && sorted_pair(c, d) < sorted_pair(u, v));
    if (!illegal) continue;
    if (++flips > flip_limit) throw Error("Delaunay flipping did not converge");
    soup.flip(u, v);
    queue.emplace_back(u, d);
    queue.emplace_back(d, v);
    queue.emplace_back(v, c);
    queue.emplace_back(c, u);
  }
}

// Splits a simple CCW polygon into triangles by clipping strict ears.
void clip_ears(std::span<const Point> pts, std::vector<std::uint32_t> poly,
               std::vector<std::vector<std::uint32_t>>& out) {
  while (poly.size() > 3) {
    const std::size_t n = poly.size();
    bool clipped = false;
    for (std::size_t i = 0; i < n && !clipped; ++i) {
      const std::uint32_t a = poly[(i + n - 1) % n], b = poly[i], c = poly[(i + 1) % n];
      if (orient(pts[a], pts[b], pts[c]) != Orientation::Left) continue;
      bool blocked = false;
      for (std::uint32_t v : poly) {
        if (v == a || v == b || v == c) continue;
        if (orient(pts[a], pts[b], pts[v]) != Orientation::Right &&
            orient(pts[b], pts[c], pts[v]) != Orientation::Right &&
            orient(pts[c], pts[a], pts[v]) != Orientation::Right) {
          blocked = true;
          break;
        }
      }
      if (blocked) continue;
      out.push_back({a, b, c});
      poly.erase(poly.begin() + static_cast<std::ptrdiff_t>(i));
      clipped = true;
    }
    if (!clipped) throw Error("hull pocket has no clippable ear");
  }
  if (orient(pts[poly[0]], pts[poly[1]], pts[poly[2]]) != Orientation::Left) {
    throw Error("hull pocket ends in a degenerate triangle");
  }
  out.push_back(std::move(poly));
}

}  // namespace

Mesh hex_grid(std::size_t rows, std::size_t cols, double edge_len) {
  if (rows == 0 || cols == 0) throw InvalidInputError("hex grid needs at least one row and column");
  if (!(edge_len > 0.0) || !std::isfinite(edge_len)) {
    throw InvalidInputError("hex edge length must be positive");
  }
  // Lattice units: x in steps of sqrt(3)/2 * s, y in steps of s/2.
  constexpr int kOffsets[6][2] = {{1, -1}, {1, 1}, {0, 2}, {-1, 1}, {-1, -1}, {0, -2}};
  const double ux = std::sqrt(3.0) / 2.0 * edge_len;
  const double uy = edge_len / 2.0;

  std::map<std::pair<long, long>, std::uint32_t> ids;
  std::vector<Point> points;
  std::vector<std::vector<std::uint32_t>> cycles;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const long cx = 2 * static_cast<long>(c) + static_cast<long>(r & 1) + 1;
      const long cy = 3 * static_cast<long>(r) + 2;
      auto& cycle = cycles.emplace_back();
      for (const auto& off : kOffsets) {
        const std::pair<long, long> key{cx + off[0], cy + off[1]};
        auto [it, inserted] = ids.try_emplace(key, static_cast<std::uint32_t>(points.size()));
        if (inserted) {
          points.push_back({static_cast<double>(key.first) * ux, static_cast<double>(key.second) * uy});
        }
        cycle.push_back(it->second);
      }
    }
  }
  return build_mesh(points, cycles);
}

Mesh close_convex_hull(const Mesh& m) {
  const auto pts = m.vertices();
  // Domain boundary in CCW order: the outer face's CW perimeter reversed.
  std::vector<std::uint32_t> ring;
  for (HalfEdgeId h : face_perimeter(m, m.outer_face())) ring.push_back(m.origin(h).value);
  std::reverse(ring.begin(), ring.end());
  const std::size_t k = ring.size();

  std::vector<std::uint32_t> order = ring;
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return pts[a].x < pts[b].x || (pts[a].x == pts[b].x && pts[a].y < pts[b].y);
  });
  std::vector<std::uint32_t> hull;
  for (int pass = 0; pass < 2; ++pass) {
    const std::size_t base = hull.size();
    for (std::uint32_t v : order) {
      while (hull.size() >= base + 2 &&
             orient(pts[hull[hull.size() - 2]], pts[hull.back()], pts[v]) != Orientation::Left) {
        hull.pop_back();
      }
      hull.push_back(v);
    }
    hull.pop_back();
    std::reverse(order.begin(), order.end());
  }

  // Boundary vertices on the hull, including those in the middle of hull edges.
  auto on_hull = [&](std::uint32_t v) {
    for (std::size_t i = 0; i < hull.size(); ++i) {
      const Point a = pts[hull[i]], b = pts[hull[(i + 1) % hull.size()]], q = pts[v];
      if (orient(a, b, q) == Orientation::Collinear && std::min(a.x, b.x) <= q.x &&
          q.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= q.y && q.y <= std::max(a.y, b.y)) {
        return true;
      }
    }
    return false;
  };
  std::vector<std::size_t> marks;
  for (std::size_t i = 0; i < k; ++i) {
    if (on_hull(ring[i])) marks.push_back(i);
  }

  auto cycles = face_cycles(m);
  for (std::size_t j = 0; j < marks.size(); ++j) {
    const std::size_t from = marks[j];
    const std::size_t to = j + 1 < marks.size() ? marks[j + 1] : marks.front() + k;
    if (to - from < 2) continue;
    // The pocket lies right of the boundary chain, so walk it backwards.
    std::vector<std::uint32_t> pocket{ring[from]};
    for (std::size_t i = to; i > from; --i) pocket.push_back(ring[i % k]);
    clip_ears(pts, std::move(pocket), cycles);
  }
  return build_mesh(pts, cycles);
}

Mesh delaunay_triangulate(std::span<const Point> points) {
  const std::size_t n = points.size();
  if (n < 3) throw InvalidInputError("Delaunay triangulation needs at least 3 points");
  for (const Point& p : points) require_finite(p);

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    const Point pa = points[a], pb = points[b];
    return pa.x < pb.x || (pa.x == pb.x && (pa.y < pb.y || (pa.y == pb.y && a < b)));
  });
  for (std::size_t i = 1; i < n; ++i) {
    if (points[order[i]] == points[order[i - 1]]) {
      throw InvalidInputError("duplicate input point " + std::to_string(order[i]));
    }
  }

  std::size_t apex = 2;
  while (apex < n && orient(points[order[0]], points[order[1]], points[order[apex]]) ==
                         Orientation::Collinear) {
    ++apex;
  }
  if (apex == n) throw InvalidInputError("all input points are collinear");

  TriangleSoup soup(points);
  std::deque<std::pair<std::uint32_t, std::uint32_t>> queue;
  const std::uint32_t top = order[apex];
  const bool apex_left =
      orient(points[order[0]], points[order[1]], points[top]) == Orientation::Left;
  std::vector<std::uint32_t> hull;  // CCW ring
  for (std::size_t i = 0; i + 1 < apex; ++i) {
    const std::uint32_t a = order[i], b = order[i + 1];
    soup.add(apex_left ? TriangleSoup::Tri{a, b, top} : TriangleSoup::Tri{b, a, top});
    if (i > 0) queue.emplace_back(a, top);
  }
  if (apex_left) {
    hull.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(apex));
  } else {
    hull.assign(order.rbegin() + static_cast<std::ptrdiff_t>(n - apex), order.rend());
  }
  hull.push_back(top);
  legalize(soup, queue);

  std::vector<char> visible;
  for (std::size_t k = apex + 1; k < n; ++k) {
    const std::uint32_t p = order[k];
    const std::size_t h = hull.size();
    visible.assign(h, 0);
    for (std::size_t i = 0; i < h; ++i) {
      visible[i] = orient(points[hull[i]], points[hull[(i + 1) % h]], points[p]) == Orientation::Right;
    }
    std::size_t first = h;
    for (std::size_t i = 0; i < h; ++i) {
      if (visible[i] && !visible[(i + h - 1) % h]) {
        first = i;
        break;
      }
    }
    if (first == h) throw Error("internal: no visible hull edge for an exterior point");
    std::size_t count = 0;
    while (count < h && visible[(first + count) % h]) {
      const std::uint32_t a = hull[(first + count) % h];
      const std::uint32_t b = hull[(first + count + 1) % h];
      soup.add({a, p, b});
      queue.emplace_back(a, b);
      ++count;
    }
    // Drop the hull vertices strictly inside the visible chain, insert p.
    std::vector<std::uint32_t> next_hull;
    next_hull.reserve(h + 1);
    for (std::size_t i = 0; i < h; ++i) {
      const std::size_t offset = (i + h - first) % h;  // position along the chain
      if (offset >= 1 && offset < count) continue;
      next_hull.push_back(hull[i]);
      if (offset == 0) next_hull.push_back(p);
    }
    hull = std::move(next_hull);
    legalize(soup, queue);
  }
  return build_mesh(points, to_cycles(soup));
}

Mesh random_flip_perturb(const Mesh& triangulation, std::size_t k, std::uint64_t seed) {
  const auto cycles = face_cycles(triangulation);
  for (const auto& c : cycles) {
    if (c.size() != 3) throw InvalidInputError("flip perturbation needs a triangulation");
  }
  const std::vector<Point> points(triangulation.vertices().begin(), triangulation.vertices().end());
  TriangleSoup soup(points);
  for (const auto& c : cycles) soup.add({c[0], c[1], c[2]});

  SplitMix64 rng(seed);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> candidates;
  for (std::size_t step = 0; step < k; ++step) {
    candidates.clear();
    for (const auto& t : soup.triangles()) {
      for (std::size_t j = 0; j < 3; ++j) {
        const std::uint32_t u = t[j], v = t[(j + 1) % 3];
        if (u < v && soup.flippable(u, v)) candidates.emplace_back(u, v);
      }
    }
    if (candidates.empty()) break;
    const auto [u, v] = candidates[rng.below(candidates.size())];
    soup.flip(u, v);
  }
  return build_mesh(points, to_cycles(soup));
}

Mesh chord_split_subdivision(std::size_t n_splits, std::uint64_t seed, BoundingBox bbox) {
  if (!(bbox.xmax > bbox.xmin) || !(bbox.ymax > bbox.ymin)) {
    throw InvalidInputError("bounding box must have positive extent");
  }
  std::vector<Point> points{{bbox.xmin, bbox.ymin},
                            {bbox.xmax, bbox.ymin},
                            {bbox.xmax, bbox.ymax},
                            {bbox.xmin, bbox.ymax}};
  std::vector<std::vector<std::uint32_t>> faces{{0, 1, 2, 3}};
  std::set<std::pair<std::uint32_t, std::uint32_t>> boundary{{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  SplitMix64 rng(seed);

  // A chord end: either an existing vertex or a new point on boundary edge `edge`.
  struct End {
    std::size_t edge;
    bool fresh;
    std::uint32_t vertex;
  };

  for (std::size_t s = 0; s < n_splits; ++s) {
    for (std::size_t attempt = 0;; ++attempt) {
      if (attempt > 10000) throw Error("chord split found no splittable face");
      const std::size_t f = rng.below(faces.size());
      auto& cycle = faces[f];
      const std::size_t k = cycle.size();
      const std::size_t i = rng.below(k);
      std::size_t j = rng.below(k - 1);
      if (j >= i) ++j;

      auto choose = [&](std::size_t e) -> End {
        const std::uint32_t a = cycle[e], b = cycle[(e + 1) % k];
        if (boundary.count(sorted_pair(a, b))) return {e, true, 0};
        return {e, false, rng.below(2) ? b : a};
      };
      End p = choose(i);
      End q = choose(j);
      auto touches = [&](const End& vertex_end, const End& edge_end) {
        return vertex_end.vertex == cycle[edge_end.edge] ||
               vertex_end.vertex == cycle[(edge_end.edge + 1) % k];
      };
      if (!p.fresh && !q.fresh) {
        const auto pi = std::find(cycle.begin(), cycle.end(), p.vertex) - cycle.begin();
        const auto qi = std::find(cycle.begin(), cycle.end(), q.vertex) - cycle.begin();
        const std::size_t gap = static_cast<std::size_t>((qi - pi + static_cast<long>(k)) % static_cast<long>(k));
        if (gap == 0 || gap == 1 || gap == k - 1) continue;
      } else if (!p.fresh && touches(p, q)) {
        continue;
      } else if (!q.fresh && touches(q, p)) {
        continue;
      }

      // Insert fresh points; boundary edges are axis-aligned, so the new
      // point lies exactly on the edge.
      std::vector<std::uint32_t> expanded;
      std::uint32_t pv = p.vertex, qv = q.vertex;
      for (std::size_t e = 0; e < k; ++e) {
        expanded.push_back(cycle[e]);
        for (End* end : {&p, &q}) {
          if (!end->fresh || end->edge != e) continue;
          const std::uint32_t a = cycle[e], b = cycle[(e + 1) % k];
          const double t = rng.uniform(0.1, 0.9);
          const Point pa = points[a], pb = points[b];
          Point w = pa;
          if (pa.y == pb.y) {
            w.x = pa.x + t * (pb.x - pa.x);
          } else {
            w.y = pa.y + t * (pb.y - pa.y);
          }
          const auto id = static_cast<std::uint32_t>(points.size());
          points.push_back(w);
          boundary.erase(sorted_pair(a, b));
          boundary.insert(sorted_pair(a, id));
          boundary.insert(sorted_pair(id, b));
          expanded.push_back(id);
          (end == &p ? pv : qv) = id;
        }
      }
      const std::size_t m = expanded.size();
      const auto ip = static_cast<std::size_t>(std::find(expanded.begin(), expanded.end(), pv) - expanded.begin());
      const auto iq = static_cast<std::size_t>(std::find(expanded.begin(), expanded.end(), qv) - expanded.begin());
      std::vector<std::uint32_t> first, second;
      for (std::size_t t = ip;; t = (t + 1) % m) {
        first.push_back(expanded[t]);
        if (t == iq) break;
      }
      for (std::size_t t = iq;; t = (t + 1) % m) {
        second.push_back(expanded[t]);
        if (t == ip) break;
      }
      cycle = std::move(first);
      faces.push_back(std::move(second));
      break;
    }
  }
  return build_mesh(points, faces);
}

std::vector<Point> uniform_points(std::size_t n, std::uint64_t seed, BoundingBox bbox) {
  SplitMix64 rng(seed);
  std::vector<Point> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rng.uniform(bbox.xmin, bbox.xmax);
    const double y = rng.uniform(bbox.ymin, bbox.ymax);
    out.push_back({x, y});
  }
  return out;
}

Mesh random_delaunay(std::size_t n, std::uint64_t seed) {
  return delaunay_triangulate(uniform_points(n, seed));
}

Mesh random_flipped(std::size_t n, std::size_t k, std::uint64_t seed) {
  SplitMix64 seeds(seed);
  const std::uint64_t point_seed = seeds.next();
  const std::uint64_t flip_seed = seeds.next();
  return random_flip_perturb(random_delaunay(n, point_seed), k, flip_seed);
}

BoundingBox bounding_box(const Mesh& m) {
  BoundingBox b{INFINITY, INFINITY, -INFINITY, -INFINITY};
  for (const Point& p : m.vertices()) {
    b.xmin = std::min(b.xmin, p.x);
    b.ymin = std::min(b.ymin, p.y);
    b.xmax = std::max(b.xmax, p.x);
    b.ymax = std::max(b.ymax, p.y);
  }
  return b;
}

}  // namespace celestial
