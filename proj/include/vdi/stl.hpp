#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "vdi/mesh.hpp"

namespace vdi {

// Parses a binary or ASCII STL payload. The format is sniffed from the
// content: a "solid" prefix whose body parses as ASCII facets is ASCII,
// everything else is treated as binary. Facet normals are discarded.
// Vertices are not welded; each facet contributes three vertices.
TriangleMesh parse_stl(std::span<const std::byte> bytes);

TriangleMesh load_stl(const std::filesystem::path& path);

// Binary STL writer (80-byte header, little-endian float32 facets).
std::vector<std::byte> write_stl(const TriangleMesh& mesh);

// ASCII writer, mostly for fixtures.
std::string write_stl_ascii(const TriangleMesh& mesh, const std::string& name = "mesh");

}  // namespace vdi
