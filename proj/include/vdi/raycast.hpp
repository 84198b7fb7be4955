#pragma once

#include <optional>
#include <span>

#include "vdi/camera.hpp"
#include "vdi/depth_image.hpp"
#include "vdi/kinematics.hpp"

namespace vdi {

// Moller-Trumbore intersection of the ray origin + t * dir with a triangle.
// Returns t (both sides of the triangle count). Rays within 1e-12 of the
// triangle plane are treated as misses.
std::optional<double> intersect_ray_triangle(const Vec3& origin, const Vec3& dir, const Vec3& a, const Vec3& b,
                                             const Vec3& c);

// Brute-force depth oracle: casts the ray through every `stride`-th pixel
// centre (u % stride == 0 and v % stride == 0) and keeps the nearest hit
// with camera-frame Z in [near, far], testing every triangle. Other pixels
// stay invalid. Intended for small images.
DepthImage raycast_depth(std::span<const PosedMesh> meshes, const CameraModel& cam, int stride = 1);

}  // namespace vdi
