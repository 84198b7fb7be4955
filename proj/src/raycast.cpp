#include "vdi/raycast.hpp"

#include <cmath>
#include <algorithm>
#include <array>
#include <atomic>
#include <limits>
#include <thread>
#include <vector>

#include "vdi/error.hpp"

namespace vdi {

std::optional<double> intersect_ray_triangle(const Vec3& origin, const Vec3& dir, const Vec3& a, const Vec3& b,
                                             const Vec3& c) {
  constexpr double kParallel = 1e-12;
  const Vec3 e1 = b - a;
  const Vec3 e2 = c - a;
  const Vec3 p = dir.cross(e2);
  const double det = e1.dot(p);
  if (std::abs(det) < kParallel) return std::nullopt;
  const double inv = 1.0 / det;
  const Vec3 s = origin - a;
  const double u = s.dot(p) * inv;
  if (u < 0.0 || u > 1.0) return std::nullopt;
  const Vec3 q = s.cross(e1);
  const double v = dir.dot(q) * inv;
  if (v < 0.0 || u + v > 1.0) return std::nullopt;
  return e2.dot(q) * inv;
}

DepthImage raycast_depth(std::span<const PosedMesh> meshes, const CameraModel& cam, int stride) {
  cam.validate();
  if (stride < 1) throw Error(ErrorCode::kInvalidArgument, "stride must be >= 1");

  // Everything in the camera frame; the ray origin is then 0 and a ray with
  // dir.z == 1 has t equal to depth.
  std::vector<std::array<Vec3, 3>> tris;
  for (const auto& pm : meshes) {
    if (pm.mesh == nullptr) continue;
    const RigidTransform to_cam = cam.world_to_camera * pm.pose;
    for (const auto& t : pm.mesh->triangles) {
      tris.push_back({to_cam.apply(pm.mesh->vertices[t[0]]), to_cam.apply(pm.mesh->vertices[t[1]]),
                      to_cam.apply(pm.mesh->vertices[t[2]])});
    }
  }

  DepthImage out(cam.width, cam.height);
  const Vec3 origin = Vec3::Zero();
  const int rows = (cam.height + stride - 1) / stride;
  std::atomic<int> next_row{0};
  auto worker = [&] {
    for (int r = next_row++; r < rows; r = next_row++) {
      const int v = r * stride;
      for (int u = 0; u < cam.width; u += stride) {
        const Vec3 dir((u - cam.cx) / cam.fx, (v - cam.cy) / cam.fy, 1.0);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& tri : tris) {
          const auto t = intersect_ray_triangle(origin, dir, tri[0], tri[1], tri[2]);
          if (t && *t >= cam.near_plane && *t <= cam.far_plane && *t < best) best = *t;
        }
        if (std::isfinite(best)) out.at(u, v) = static_cast<float>(best);
      }
    }
  };
  const unsigned threads = std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()), rows);
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
  }
  return out;
}

}  // namespace vdi
