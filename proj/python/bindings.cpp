#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "celestial/bench.hpp"
#include "celestial/mesh_io.hpp"
#include "celestial/predicates.hpp"
#include "celestial/walks.hpp"

namespace py = pybind11;
using namespace celestial;

namespace {

py::dict result_dict(const WalkOutcome& o) {
  py::dict d;
  if (const auto* l = std::get_if<Located>(&o.result)) {
    d["kind"] = "Located";
    d["face"] = l->face.value;
  } else if (const auto* out = std::get_if<Outside>(&o.result)) {
    d["kind"] = "Outside";
    d["exit"] = out->exit.value;
  } else {
    d["kind"] = "Aborted";
    d["reason"] = std::get<Aborted>(o.result).reason == AbortReason::CycleDetected ? "CycleDetected"
                                                                                 : "BudgetExhausted";
  }
  std::vector<std::uint32_t> faces;
  for (FaceId f : o.trace.visited_faces) faces.push_back(f.value);
  d["visited_faces"] = faces;
  d["visited_halfedges"] = o.trace.visited_halfedges();
  d["orientation_tests"] = o.trace.counters.orientation_tests;
  d["obtuse_tests"] = o.trace.counters.obtuse_tests;
  d["memo_lookups"] = o.trace.counters.memo_lookups;
  d["distance_comparisons"] = o.trace.counters.distance_comparisons;
  return d;
}

WalkSpec spec_or_throw(const std::string& label, std::uint64_t seed) {
  const auto spec = parse_walk_spec(label, seed);
  if (!spec) throw py::value_error("unknown walk '" + label + "'");
  return *spec;
}

Point to_point(std::pair<double, double> p) { return {p.first, p.second}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Walking point location in convex planar subdivisions";

  py::register_exception<Error>(m, "CelestialError", PyExc_ValueError);

  py::class_<Mesh>(m, "Mesh")
      .def(py::init([](const std::vector<std::pair<double, double>>& vertices,
                       const std::vector<std::vector<std::uint32_t>>& faces) {
             std::vector<Point> pts;
             for (const auto& v : vertices) pts.push_back(to_point(v));
             return build_mesh(pts, faces);
           }),
           py::arg("vertices"), py::arg("faces"))
      .def_static("load", [](const std::string& path) { return build_mesh(read_mesh_file(path)); })
      .def("save", [](const Mesh& self, const std::string& path) { write_mesh_file(path, to_document(self)); })
      .def_property_readonly("num_vertices", &Mesh::num_vertices)
      .def_property_readonly("num_halfedges", &Mesh::num_halfedges)
      .def_property_readonly("num_faces", &Mesh::num_faces)
      .def_property_readonly("outer_face", [](const Mesh& self) { return self.outer_face().value; })
      .def("vertices",
           [](const Mesh& self) {
             std::vector<std::pair<double, double>> out;
             for (const Point& p : self.vertices()) out.emplace_back(p.x, p.y);
             return out;
           })
      .def("faces", [](const Mesh& self) { return face_cycles(self); })
      .def("validate", [](const Mesh& self) { return validate_mesh(self); })
      .def("face_of_halfedge", [](const Mesh& self, std::uint32_t h) { return self.face(HalfEdgeId(h)).value; })
      .def("is_outer", [](const Mesh& self, std::uint32_t f) { return self.is_outer(FaceId(f)); })
      .def("face_edge", [](const Mesh& self, std::uint32_t f) { return self.edge(FaceId(f)).value; })
      .def("point_in_face",
           [](const Mesh& self, std::uint32_t f, std::pair<double, double> p) {
             return point_in_face(self, FaceId(f), to_point(p));
           })
      .def("faces_containing", [](const Mesh& self, std::pair<double, double> p) {
        std::vector<std::uint32_t> out;
        for (FaceId f : faces_containing(self, to_point(p))) out.push_back(f.value);
        return out;
      });

  m.def("hex_grid", &hex_grid, py::arg("rows"), py::arg("cols"), py::arg("edge_len") = 1.0);
  m.def("close_convex_hull", &close_convex_hull, py::arg("mesh"));
  m.def("random_delaunay", &random_delaunay, py::arg("n"), py::arg("seed"));
  m.def("random_flipped", &random_flipped, py::arg("n"), py::arg("flips"), py::arg("seed"));
  m.def(
      "chord_split_subdivision",
      [](std::size_t n, std::uint64_t seed) { return chord_split_subdivision(n, seed); }, py::arg("n_splits"),
      py::arg("seed"));
  m.def(
      "delaunay_triangulate",
      [](const std::vector<std::pair<double, double>>& points) {
        std::vector<Point> pts;
        for (const auto& p : points) pts.push_back(to_point(p));
        return delaunay_triangulate(pts);
      },
      py::arg("points"));

  m.def(
      "orient",
      [](std::pair<double, double> a, std::pair<double, double> b, std::pair<double, double> c) {
        return static_cast<int>(orient(to_point(a), to_point(b), to_point(c)));
      },
      "Sign of the turn a -> b -> c: 1 left, -1 right, 0 collinear.");
  m.def("obtuse_fraction", &obtuse_fraction, py::arg("mesh"));

  m.def(
      "locate",
      [](const Mesh& mesh, std::pair<double, double> p, std::uint32_t start, const std::string& walk,
         std::uint64_t seed, std::size_t budget) {
        const WalkSpec spec = spec_or_throw(walk, seed);
        std::optional<ObtuseBits> memo;
        if (spec.memo_obtuse) memo = precompute_obtuse_bits(mesh);
        return result_dict(run_walk(mesh, spec, HalfEdgeId(start), to_point(p), budget, memo ? &*memo : nullptr));
      },
      py::arg("mesh"), py::arg("point"), py::arg("start") = 0, py::arg("walk") = "celestial", py::arg("seed") = 0,
      py::arg("budget") = 0);

  m.def(
      "run_batch",
      [](const Mesh& mesh, const std::vector<std::string>& walks, std::size_t queries, std::uint64_t seed,
         std::size_t threads) {
        std::vector<WalkSpec> specs;
        for (const auto& w : walks) specs.push_back(spec_or_throw(w, seed));
        BatchOptions opt;
        opt.queries = queries;
        opt.seed = seed;
        opt.threads = threads;
        BatchReport report;
        {
          py::gil_scoped_release release;
          report = run_batch(mesh, specs, opt);
        }
        py::dict out;
        for (const StrategyReport& s : report.strategies) {
          py::dict d;
          d["queries"] = s.summary.queries;
          d["failures"] = s.summary.failures;
          d["mean_faces"] = s.summary.mean_faces;
          d["median_faces"] = s.summary.median_faces;
          d["std_faces"] = s.summary.std_faces;
          d["max_faces"] = s.summary.max_faces;
          d["mean_orient_per_he"] = s.summary.mean_orient_per_he;
          d["mean_obtuse"] = s.summary.mean_obtuse;
          out[py::str(s.spec.label())] = d;
        }
        return out;
      },
      py::arg("mesh"), py::arg("walks") = std::vector<std::string>{"celestial"}, py::arg("queries") = 1000,
      py::arg("seed") = 1, py::arg("threads") = 1);

  m.def(
      "scaling_experiment",
      [](const std::vector<std::size_t>& sizes, std::size_t queries, std::uint64_t seed, std::size_t threads) {
        ScalingResult r;
        {
          py::gil_scoped_release release;
          r = scaling_experiment(sizes, queries, seed, threads);
        }
        std::vector<std::pair<std::size_t, double>> rows;
        for (const ScalingRow& row : r.rows) rows.emplace_back(row.n, row.mean_faces);
        return py::make_tuple(rows, r.exponent);
      },
      py::arg("sizes"), py::arg("queries") = 200, py::arg("seed") = 1, py::arg("threads") = 1);
}
