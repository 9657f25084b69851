#include <vector>

#include "celestial/generators.hpp"
#include "celestial/rng.hpp"
#include "celestial/walks.hpp"

namespace celestial {

std::optional<LoopInstance> find_visibility_loop_instance(const LoopSearchOptions& options) {
  SplitMix64 seeds(options.seed);
  for (std::size_t i = 0; i < options.max_meshes; ++i) {
    const std::uint64_t mesh_seed = seeds.next();
    Mesh m = options.perturb
                 ? random_flipped(options.points_per_mesh, options.flips_per_mesh, mesh_seed)
                 : random_delaunay(options.points_per_mesh, mesh_seed);

    std::vector<HalfEdgeId> interior;
    for (std::size_t h = 0; h < m.num_halfedges(); ++h) {
      if (!m.is_outer(m.face(HalfEdgeId(h)))) interior.emplace_back(h);
    }
    const BoundingBox box = bounding_box(m);
    const double mx = 0.1 * box.width();
    const double my = 0.1 * box.height();
    SplitMix64 rng(mesh_seed ^ 0x5851f42d4c957f2dULL);

    for (std::size_t q = 0; q < options.queries_per_mesh; ++q) {
      const HalfEdgeId start = interior[rng.below(interior.size())];
      const Point p{rng.uniform(box.xmin + mx, box.xmax - mx), rng.uniform(box.ymin + my, box.ymax - my)};
      const auto vis = visibility_walk(m, start, p, VisibilityVariant::deterministic());
      const auto* ab = std::get_if<Aborted>(&vis.result);
      if (!ab || ab->reason != AbortReason::CycleDetected) continue;
      const auto cel = celestial_walk(m, start, p);
      const auto* loc = std::get_if<Located>(&cel.result);
      if (!loc || !point_in_face(m, loc->face, p)) continue;
      return LoopInstance{std::move(m), start, p, i + 1};
    }
  }
  return std::nullopt;
}

}  // namespace celestial
