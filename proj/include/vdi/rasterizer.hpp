#pragma once

#include <span>

#include <Eigen/Core>

#include "vdi/camera.hpp"
#include "vdi/depth_image.hpp"
#include "vdi/kinematics.hpp"
#include "vdi/robot_model.hpp"

namespace vdi {

struct RenderOptions {
  // Worker threads for tile rasterization; 0 picks the hardware concurrency.
  unsigned threads = 0;
  // Square tile edge in pixels. Output does not depend on the tile size.
  int tile_size = 64;
};

// Camera frame -> homogeneous clip space. Rows 0/1 produce pixel coordinates
// after the divide, row 2 is the OpenGL-style depth row (near maps to -1, far
// to +1 with z pointing forward), row 3 copies Z into w. With cx = width / 2
// and cy = height / 2 this is the familiar fx/cx, fy/cy projection matrix
// followed by the viewport transform.
Eigen::Matrix4d projection_matrix(const CameraModel& cam);

// Full model-view-projection for one mesh: projection * view * model.
Eigen::Matrix4d mvp_matrix(const CameraModel& cam, const RigidTransform& model_to_world);

// Depth-only z-buffer render. Each pixel centre receives the nearest
// camera-frame Z over all covering fragments, restricted to [near, far];
// uncovered pixels keep DepthImage::kInvalid. Triangles are clipped against
// the near plane in clip space, fragments beyond the far plane are dropped,
// and 1/Z is interpolated linearly in screen space. Edge ties follow the
// top-left rule. No face culling.
DepthImage render_vdi(std::span<const PosedMesh> meshes, const CameraModel& cam, const RenderOptions& options = {});

// forward_kinematics -> posed_meshes -> render_vdi.
DepthImage render_frame(const RobotModel& model, const JointState& q, const CameraModel& cam,
                        const RenderOptions& options = {});

}  // namespace vdi
