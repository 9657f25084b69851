#include "celestial/mesh_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace celestial {

std::string format_double(double v) {
  if (v == 0.0) return "0";  // folds -0, which JSON readers do not preserve
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

double parse_double(std::string_view s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw FormatError("not a decimal number: '" + std::string(s) + "'");
  }
  return v;
}

Point json_point(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw FormatError(std::string(what) + " must be an [x, y] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

Point parse_point(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) throw FormatError("point must be written as x,y");
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  const Point p{parse_double(trim(text.substr(0, comma))), parse_double(trim(text.substr(comma + 1)))};
  if (!is_finite(p)) throw FormatError("point coordinates must be finite");
  return p;
}

MeshDocument parse_mesh_document(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("mesh file is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vertices") || !j.contains("faces")) {
    throw FormatError("mesh file needs \"vertices\" and \"faces\"");
  }
  MeshDocument doc;
  for (const auto& v : j.at("vertices")) doc.vertices.push_back(json_point(v, "vertex"));
  for (const auto& f : j.at("faces")) {
    if (!f.is_array()) throw FormatError("face must be an array of vertex indices");
    auto& cycle = doc.faces.emplace_back();
    for (const auto& idx : f) {
      if (!idx.is_number_unsigned()) throw FormatError("face index must be a non-negative integer");
      cycle.push_back(idx.get<std::uint32_t>());
    }
  }
  if (j.contains("start")) {
    if (!j["start"].is_number_unsigned()) throw FormatError("start must be a half-edge id");
    doc.start = HalfEdgeId(j["start"].get<std::uint32_t>());
  }
  if (j.contains("query")) doc.query = json_point(j["query"], "query");
  return doc;
}

std::string format_mesh_document(const MeshDocument& doc) {
  std::ostringstream out;
  out << "{\n  \"vertices\": [";
  for (std::size_t i = 0; i < doc.vertices.size(); ++i) {
    out << (i ? ",\n    [" : "\n    [") << format_double(doc.vertices[i].x) << ", "
        << format_double(doc.vertices[i].y) << ']';
  }
  out << (doc.vertices.empty() ? "],\n" : "\n  ],\n");
  out << "  \"faces\": [";
  for (std::size_t i = 0; i < doc.faces.size(); ++i) {
    out << (i ? ",\n    [" : "\n    [");
    for (std::size_t k = 0; k < doc.faces[i].size(); ++k) {
      out << (k ? ", " : "") << doc.faces[i][k];
    }
    out << ']';
  }
  out << (doc.faces.empty() ? "]" : "\n  ]");
  if (doc.start) out << ",\n  \"start\": " << doc.start->value;
  if (doc.query) {
    out << ",\n  \"query\": [" << format_double(doc.query->x) << ", "
        << format_double(doc.query->y) << ']';
  }
  out << "\n}\n";
  return out.str();
}

MeshDocument to_document(const Mesh& m) {
  MeshDocument doc;
  doc.vertices.assign(m.vertices().begin(), m.vertices().end());
  doc.faces = face_cycles(m);
  return doc;
}

Mesh build_mesh(const MeshDocument& doc) { return build_mesh(doc.vertices, doc.faces); }

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
}

MeshDocument read_mesh_file(const std::filesystem::path& path) {
  return parse_mesh_document(read_text_file(path));
}

void write_mesh_file(const std::filesystem::path& path, const MeshDocument& doc) {
  write_text_file(path, format_mesh_document(doc));
}

}  // namespace celestial
