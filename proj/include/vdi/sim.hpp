#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vdi/camera.hpp"
#include "vdi/depth_image.hpp"
#include "vdi/kinematics.hpp"
#include "vdi/mesh.hpp"
#include "vdi/occlusion.hpp"
#include "vdi/rasterizer.hpp"
#include "vdi/robot_model.hpp"

namespace vdi {

struct SceneTarget {
  std::string name;
  TriangleMesh mesh;
  RigidTransform pose;  // mesh frame -> world
};

struct Scene {
  const RobotModel* robot = nullptr;  // not owned
  JointState joints;
  std::vector<SceneTarget> targets;
  CameraModel camera;
  double noise_sigma = 0.0;  // meters
  std::uint64_t seed = 0;

  // Throws Error(kInvalidArgument) on a missing robot, duplicate target
  // names, empty target meshes or a negative noise level.
  void validate() const;
};

struct SensorFrame {
  DepthImage actual;  // robot and targets, with noise
  DepthImage vdi;     // robot only, noise-free
  OcclusionMask truth;
  // Oracle layers the truth is built from.
  DepthImage robot_depth;
  DepthImage target_depth;
};

SensorFrame simulate_sensor(const Scene& scene, const RenderOptions& options = {});

// Truth from oracle layers: NoRobot where the robot is absent, Visible where
// a target lies strictly in front of the robot, Occluded otherwise.
OcclusionMask truth_mask(const DepthImage& robot_depth, const DepthImage& target_depth);

// Additive Gaussian noise on valid pixels, clamped back into [near, far].
DepthImage add_depth_noise(const DepthImage& depth, double sigma, std::uint64_t seed, double near_plane,
                           double far_plane);

// Marks pixels within `radius` (Chebyshev) of a silhouette edge of any layer.
// A pixel is on an edge when one of its 8 neighbours differs from it in
// depth validity.
std::vector<bool> near_silhouette_edge(const std::vector<const DepthImage*>& layers, int radius = 0);

// Bounding box of the valid pixels; empty (zero size) when none are valid.
PixelBox valid_bounds(const DepthImage& depth);

// A box moving along +x on a conveyor under an overhead camera. During the
// occlusion window the arm swings its shoulder over the box and follows it.
struct ConveyorConfig {
  double duration = 3.0;  // seconds; frames at k / fps for k / fps < duration
  double fps = 30.0;
  double speed = 0.2;  // m/s along world x
  double window_start = 1.0;  // occlusion window [start, end)
  double window_end = 2.0;
  double lane_y = -0.45;
  double start_x = -0.3;
  double box_size = 0.1;    // x/y extent
  double box_height = 0.05;
  std::string pan_joint = "shoulder_pan_joint";
  std::string lift_joint = "shoulder_lift_joint";
  double reach_lift = 1.5707963267948966;
  double noise_sigma = 0.0;
  std::uint64_t seed = 1;
  CameraModel camera = default_camera();

  // 320x240 pinhole 2 m above the lane looking straight down.
  static CameraModel default_camera();
  // Throws Error(kInvalidArgument) for a window outside [0, duration] or
  // non-positive fps.
  void validate() const;
};

struct ConveyorFrame {
  std::size_t index = 0;
  JointState joints;        // timestamp is the frame time
  Vec3 target_position;     // centre of the box's top face (the keypoint)
  PixelProjection keypoint; // its projection
  PixelBox region;          // bounding box of the box silhouette
  SensorFrame sensor;
  // Truth-occluded share of `region`.
  double expected_fraction = 0.0;
};

std::vector<ConveyorFrame> conveyor_scenario(const RobotModel& robot, const ConveyorConfig& cfg,
                                             const RenderOptions& options = {});
// Box mesh of the conveyor target, centred at its origin.
TriangleMesh conveyor_box(const ConveyorConfig& cfg);

// Scenario description file (YAML). Relative paths resolve against the
// file's directory.
//
//   robot: arm6.urdf
//   camera: camera.yaml        # optional with `conveyor`
//   noise_sigma: 0.0
//   seed: 1
//   conveyor: {duration: 3, fps: 30, speed: 0.2, window: [1, 2],
//              lane_y: -0.45, start_x: -0.3, box_size: 0.1, box_height: 0.05}
//
// or, for a scripted scene, instead of `conveyor`:
//
//   trajectory: joints.csv
//   targets:
//     - {name: part, mesh: part.stl, scale: [1, 1, 1], pose: [tx, ty, tz, qw, qx, qy, qz]}
//     - {name: crate, box: [0.2, 0.2, 0.1], pose: [...]}
//     - {name: ball, sphere: 0.05, pose: [...]}
//     - {name: can, cylinder: [0.03, 0.12], pose: [...]}
struct Scenario {
  std::filesystem::path robot;
  CameraModel camera;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
  std::optional<ConveyorConfig> conveyor;
  std::vector<JointState> trajectory;
  std::vector<SceneTarget> targets;
};

// Throws Error(kParse) for malformed content, Error(kIo) for unreadable
// referenced files and Error(kInvalidArgument) for invalid values.
Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace vdi
