#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace vdi {

using Vec3 = Eigen::Vector3d;

// Rigid body transform stored as unit quaternion + translation. Applying
// `a * b` to a point is the same as applying b first, then a.
class RigidTransform {
 public:
  RigidTransform() : rotation_(Eigen::Quaterniond::Identity()), translation_(Vec3::Zero()) {}
  RigidTransform(const Eigen::Quaterniond& rotation, const Vec3& translation)
      : rotation_(rotation.normalized()), translation_(translation) {}

  static RigidTransform identity() { return {}; }
  static RigidTransform from_translation(const Vec3& t) {
    return {Eigen::Quaterniond::Identity(), t};
  }
  static RigidTransform from_rotation(const Eigen::Quaterniond& q) { return {q, Vec3::Zero()}; }
  static RigidTransform from_axis_angle(const Vec3& axis, double angle) {
    return from_rotation(Eigen::Quaterniond(Eigen::AngleAxisd(angle, axis.normalized())));
  }
  // URDF convention: fixed-axis roll about x, then pitch about y, then yaw about z.
  static RigidTransform from_xyz_rpy(const Vec3& xyz, const Vec3& rpy) {
    const Eigen::Quaterniond q = Eigen::AngleAxisd(rpy.z(), Vec3::UnitZ()) *
                                 Eigen::AngleAxisd(rpy.y(), Vec3::UnitY()) *
                                 Eigen::AngleAxisd(rpy.x(), Vec3::UnitX());
    return {q, xyz};
  }

  const Eigen::Quaterniond& rotation() const { return rotation_; }
  const Vec3& translation() const { return translation_; }

  Vec3 apply(const Vec3& p) const { return rotation_ * p + translation_; }
  Vec3 apply_direction(const Vec3& d) const { return rotation_ * d; }

  RigidTransform operator*(const RigidTransform& rhs) const {
    return {rotation_ * rhs.rotation_, rotation_ * rhs.translation_ + translation_};
  }

  RigidTransform inverse() const {
    const Eigen::Quaterniond inv = rotation_.conjugate();
    return {inv, -(inv * translation_)};
  }

  Eigen::Isometry3d isometry() const {
    Eigen::Isometry3d m = Eigen::Isometry3d::Identity();
    m.linear() = rotation_.toRotationMatrix();
    m.translation() = translation_;
    return m;
  }

  bool is_approx(const RigidTransform& other, double tol) const {
    return (translation_ - other.translation_).norm() <= tol &&
           std::abs(std::abs(rotation_.dot(other.rotation_)) - 1.0) <= tol;
  }

 private:
  Eigen::Quaterniond rotation_;
  Vec3 translation_;
};

// Camera pose at `eye` looking at `target` in the optical-frame convention
// (x right, y down, z forward). `up` is the world direction that should appear
// as "up" in the image. Returns the camera-to-world transform.
RigidTransform look_at(const Vec3& eye, const Vec3& target, const Vec3& up = Vec3::UnitZ());

}  // namespace vdi
