#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "vdi/transform.hpp"

namespace vdi {

// Pinhole camera. Pixel (i, j) has its centre at continuous image coordinate
// (u, v) = (i, j); the camera frame is x right, y down, z forward, and depth
// is the camera-frame Z of a point (not ray length).
//
// With a centred principal point this is the same mapping as an OpenGL-style
// projection matrix with diagonal fx/cx, fy/cy followed by the viewport
// transform; projecting directly in pixels lets (cx, cy) sit anywhere.
struct CameraModel {
  int width = 0;
  int height = 0;
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  double near_plane = 0.0;
  double far_plane = 0.0;
  RigidTransform world_to_camera;

  // Throws Error(kInvalidArgument) if an invariant does not hold.
  void validate() const;

  RigidTransform camera_to_world() const { return world_to_camera.inverse(); }
  bool in_image(int u, int v) const { return u >= 0 && v >= 0 && u < width && v < height; }
  std::size_t pixel_count() const { return static_cast<std::size_t>(width) * static_cast<std::size_t>(height); }
};

struct PixelProjection {
  double u = 0.0;
  double v = 0.0;
  double depth = 0.0;
};

// World-frame point to pixel + depth. Throws Error(kBehindCamera) for Z <= 0.
PixelProjection project(const CameraModel& cam, const Vec3& p_world);
// Same, for a point already in the camera frame.
PixelProjection project_camera_frame(const CameraModel& cam, const Vec3& p_camera);

// Pixel + depth to a camera-frame point. Throws Error(kInvalidDepth) unless
// depth is finite and positive.
Vec3 deproject(const CameraModel& cam, double u, double v, double depth);

// Camera config as YAML key/value text:
//   width, height, fx, fy, cx, cy, near, far: numbers
//   pose: [tx, ty, tz, qw, qx, qy, qz]   camera pose in the world frame
// The stored world_to_camera is the inverse of `pose`.
CameraModel load_camera(std::string_view config_text);
CameraModel load_camera_file(const std::filesystem::path& path);
std::string write_camera(const CameraModel& cam);

}  // namespace vdi
