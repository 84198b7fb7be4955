#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vdi/mesh.hpp"
#include "vdi/transform.hpp"

namespace vdi {

enum class JointKind { kRevolute, kContinuous, kPrismatic, kFixed };

const char* to_string(JointKind kind);

struct JointLimits {
  double lower = 0.0;
  double upper = 0.0;
};

struct Joint {
  std::string name;
  JointKind kind = JointKind::kFixed;
  std::string parent_link;
  std::string child_link;
  RigidTransform origin;
  Vec3 axis = Vec3::UnitX();
  std::optional<JointLimits> limits;

  bool is_movable() const { return kind != JointKind::kFixed; }
};

struct Link {
  std::string name;
  // Collision geometry only; visual geometry is never loaded.
  std::optional<TriangleMesh> collision;
  RigidTransform mesh_to_link;
};

// Immutable kinematic tree. Construct with parse_urdf/load_urdf or from parts
// via RobotModel::build, which enforces the tree invariants.
class RobotModel {
 public:
  static RobotModel build(std::string name, std::vector<Link> links, std::vector<Joint> joints);

  const std::string& name() const { return name_; }
  const std::vector<Link>& links() const { return links_; }
  const std::vector<Joint>& joints() const { return joints_; }
  const std::string& root_link() const { return links_[root_].name; }
  std::size_t root_index() const { return root_; }

  std::optional<std::size_t> link_index(std::string_view name) const;
  std::optional<std::size_t> joint_index(std::string_view name) const;
  const Link& link(std::string_view name) const;
  const Joint& joint(std::string_view name) const;

  // Joints in parent-before-child order; the link order of a depth-first walk
  // from the root is `root_link()` followed by the child links of these joints.
  const std::vector<std::size_t>& joint_order() const { return joint_order_; }
  std::vector<std::string> depth_first_links() const;

  // Indices into links(), aligned with joints(): parent/child link of joint i.
  std::size_t parent_of(std::size_t joint) const { return joint_parent_[joint]; }
  std::size_t child_of(std::size_t joint) const { return joint_child_[joint]; }

  std::vector<std::string> movable_joint_names() const;
  std::size_t triangle_count() const;

 private:
  std::string name_;
  std::vector<Link> links_;
  std::vector<Joint> joints_;
  std::size_t root_ = 0;
  std::vector<std::size_t> joint_order_;
  std::vector<std::size_t> joint_parent_;
  std::vector<std::size_t> joint_child_;
  std::unordered_map<std::string, std::size_t> link_lookup_;
  std::unordered_map<std::string, std::size_t> joint_lookup_;
};

struct UrdfOptions {
  // Base directory for relative and package:// mesh filenames.
  std::filesystem::path base_dir = ".";
  int primitive_segments = 32;
};

RobotModel parse_urdf(std::string_view xml_text, const UrdfOptions& options = {});
RobotModel load_urdf(const std::filesystem::path& path);

}  // namespace vdi
