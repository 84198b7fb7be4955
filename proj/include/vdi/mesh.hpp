#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "vdi/transform.hpp"

namespace vdi {

struct Aabb {
  Vec3 min;
  Vec3 max;
};

struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;

  std::size_t triangle_count() const { return triangles.size(); }
  bool empty() const { return triangles.empty(); }

  // Throws Error(kInvalidArgument) when an index is out of range or a vertex
  // is not finite.
  void validate() const;

  Aabb bounds() const;

  // Appends `other` with every vertex mapped through `xf`.
  void append(const TriangleMesh& other, const RigidTransform& xf = {});

  void scale(const Vec3& factors);

  friend bool operator==(const TriangleMesh&, const TriangleMesh&) = default;
};

// Primitive tessellation used for URDF collision shapes. Boxes are centred on
// the origin; cylinders run along z, centred on the origin.
TriangleMesh make_box(const Vec3& size);
TriangleMesh make_cylinder(double radius, double length, int segments = 32);
TriangleMesh make_sphere(double radius, int segments = 32);

}  // namespace vdi
