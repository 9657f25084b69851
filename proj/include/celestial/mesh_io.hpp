#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "celestial/mesh.hpp"

namespace celestial {

/// Malformed mesh or trace text.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Contents of a mesh file. `start` and `query` are present only in
/// loop-instance fixtures.
struct MeshDocument {
  std::vector<Point> vertices;
  std::vector<std::vector<std::uint32_t>> faces;
  std::optional<HalfEdgeId> start;
  std::optional<Point> query;
};

MeshDocument parse_mesh_document(std::string_view text);

/// Canonical text: shortest round-trip decimals, faces in stored order, so
/// formatting a parsed canonical file reproduces it byte for byte.
std::string format_mesh_document(const MeshDocument& doc);

MeshDocument to_document(const Mesh& m);
Mesh build_mesh(const MeshDocument& doc);

MeshDocument read_mesh_file(const std::filesystem::path& path);
void write_mesh_file(const std::filesystem::path& path, const MeshDocument& doc);

/// Shortest decimal that parses back to exactly `v`.
std::string format_double(double v);

/// Locale-independent "x,y" parsing.
Point parse_point(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace celestial
