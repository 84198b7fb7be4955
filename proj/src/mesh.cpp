#include "vdi/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "vdi/error.hpp"

namespace vdi {

void TriangleMesh::validate() const {
  for (const auto& v : vertices) {
    if (!v.allFinite()) {
      throw Error(ErrorCode::kInvalidArgument, "mesh vertex is not finite");
    }
  }
  const auto n = vertices.size();
  for (const auto& t : triangles) {
    if (t[0] >= n || t[1] >= n || t[2] >= n) {
      throw Error(ErrorCode::kInvalidArgument,
                  "triangle index out of range (vertex count " + std::to_string(n) + ")");
    }
  }
}

Aabb TriangleMesh::bounds() const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  Aabb box{Vec3::Constant(inf), Vec3::Constant(-inf)};
  for (const auto& v : vertices) {
    box.min = box.min.cwiseMin(v);
    box.max = box.max.cwiseMax(v);
  }
  return box;
}

void TriangleMesh::append(const TriangleMesh& other, const RigidTransform& xf) {
  const auto base = static_cast<std::uint32_t>(vertices.size());
  vertices.reserve(vertices.size() + other.vertices.size());
  for (const auto& v : other.vertices) vertices.push_back(xf.apply(v));
  triangles.reserve(triangles.size() + other.triangles.size());
  for (const auto& t : other.triangles) triangles.push_back({t[0] + base, t[1] + base, t[2] + base});
}

void TriangleMesh::scale(const Vec3& factors) {
  for (auto& v : vertices) v = v.cwiseProduct(factors);
}

TriangleMesh make_box(const Vec3& size) {
  const Vec3 h = size / 2.0;
  TriangleMesh m;
  for (int i = 0; i < 8; ++i) {
    m.vertices.emplace_back((i & 1) ? h.x() : -h.x(), (i & 2) ? h.y() : -h.y(),
                            (i & 4) ? h.z() : -h.z());
  }
  // Outward winding, two triangles per face.
  m.triangles = {{0, 2, 1}, {1, 2, 3},   // -z
                 {4, 5, 6}, {5, 7, 6},   // +z
                 {0, 1, 4}, {1, 5, 4},   // -y
                 {2, 6, 3}, {3, 6, 7},   // +y
                 {0, 4, 2}, {2, 4, 6},   // -x
                 {1, 3, 5}, {3, 7, 5}};  // +x
  return m;
}

TriangleMesh make_cylinder(double radius, double length, int segments) {
  if (segments < 3) throw Error(ErrorCode::kInvalidArgument, "cylinder needs >= 3 segments");
  TriangleMesh m;
  const double hz = length / 2.0;
  const auto n = static_cast<std::uint32_t>(segments);
  for (std::uint32_t i = 0; i < n; ++i) {
    const double a = 2.0 * std::numbers::pi * i / n;
    m.vertices.emplace_back(radius * std::cos(a), radius * std::sin(a), -hz);
    m.vertices.emplace_back(radius * std::cos(a), radius * std::sin(a), hz);
  }
  const std::uint32_t bottom = 2 * n;
  const std::uint32_t top = 2 * n + 1;
  m.vertices.emplace_back(0.0, 0.0, -hz);
  m.vertices.emplace_back(0.0, 0.0, hz);
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t j = (i + 1) % n;
    const std::uint32_t b0 = 2 * i, t0 = 2 * i + 1, b1 = 2 * j, t1 = 2 * j + 1;
    m.triangles.push_back({b0, b1, t1});
    m.triangles.push_back({b0, t1, t0});
    m.triangles.push_back({bottom, b1, b0});
    m.triangles.push_back({top, t0, t1});
  }
  return m;
}

TriangleMesh make_sphere(double radius, int segments) {
  if (segments < 3) throw Error(ErrorCode::kInvalidArgument, "sphere needs >= 3 segments");
  const auto slices = static_cast<std::uint32_t>(segments);
  const std::uint32_t stacks = std::max<std::uint32_t>(2, slices / 2);
  TriangleMesh m;
  m.vertices.emplace_back(0.0, 0.0, radius);
  for (std::uint32_t s = 1; s < stacks; ++s) {
    const double phi = std::numbers::pi * s / stacks;
    for (std::uint32_t k = 0; k < slices; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / slices;
      m.vertices.emplace_back(radius * std::sin(phi) * std::cos(theta),
                              radius * std::sin(phi) * std::sin(theta), radius * std::cos(phi));
    }
  }
  m.vertices.emplace_back(0.0, 0.0, -radius);
  const std::uint32_t south = static_cast<std::uint32_t>(m.vertices.size()) - 1;
  auto ring = [slices](std::uint32_t s, std::uint32_t k) { return 1 + (s - 1) * slices + k % slices; };
  for (std::uint32_t k = 0; k < slices; ++k) {
    m.triangles.push_back({0, ring(1, k), ring(1, k + 1)});
    m.triangles.push_back({south, ring(stacks - 1, k + 1), ring(stacks - 1, k)});
  }
  for (std::uint32_t s = 1; s + 1 < stacks; ++s) {
    for (std::uint32_t k = 0; k < slices; ++k) {
      m.triangles.push_back({ring(s, k), ring(s + 1, k), ring(s + 1, k + 1)});
      m.triangles.push_back({ring(s, k), ring(s + 1, k + 1), ring(s, k + 1)});
    }
  }
  return m;
}

}  // namespace vdi
