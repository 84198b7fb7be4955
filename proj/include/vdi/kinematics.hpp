#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "vdi/mesh.hpp"
#include "vdi/robot_model.hpp"
#include "vdi/transform.hpp"

namespace vdi {

// Joint positions sampled at one instant: radians for revolute/continuous
// joints, meters for prismatic ones.
struct JointState {
  double timestamp = 0.0;
  std::map<std::string, double, std::less<>> positions;
};

// World-frame (robot root frame) pose of every link, indexed like
// RobotModel::links().
class LinkPoses {
 public:
  LinkPoses() = default;
  LinkPoses(const RobotModel& model, std::vector<RigidTransform> poses);

  const RigidTransform& at(std::string_view link) const;
  const RigidTransform& operator[](std::size_t link_index) const { return poses_[link_index]; }
  std::size_t size() const { return poses_.size(); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::vector<RigidTransform> poses_;
};

struct LimitViolation {
  std::string joint;
  double value = 0.0;
  JointLimits limits;
};

struct FkResult {
  LinkPoses poses;
  // Joints whose value lies outside the declared limits. The pose is still
  // computed with the measured value.
  std::vector<LimitViolation> limit_violations;
};

// Throws Error(kMissingJoint) if `q` lacks a movable joint, and
// Error(kInvalidArgument) for non-finite positions.
FkResult forward_kinematics(const RobotModel& model, const JointState& q);

// Local motion contributed by one joint at position `value`.
RigidTransform joint_motion(const Joint& joint, double value);

struct PosedMesh {
  const TriangleMesh* mesh = nullptr;
  RigidTransform pose;  // mesh frame -> world
};

// One entry per link with collision geometry. The returned meshes point into
// `model`, which must outlive the result.
std::vector<PosedMesh> posed_meshes(const RobotModel& model, const LinkPoses& poses);

// Joint trajectory CSV: header `t,<joint1>,...,<jointN>`, one row per frame.
std::vector<JointState> parse_trajectory_csv(std::string_view text);
std::vector<JointState> load_trajectory_csv(const std::filesystem::path& path);
std::string write_trajectory_csv(const std::vector<JointState>& frames);

}  // namespace vdi
