#include "vdi/transform.hpp"

#include <cmath>

namespace vdi {

RigidTransform look_at(const Vec3& eye, const Vec3& target, const Vec3& up) {
  const Vec3 z = (target - eye).normalized();
  Vec3 x = z.cross(up);
  if (x.norm() < 1e-9) {
    // Looking along `up`; any perpendicular works.
    x = z.cross(std::abs(z.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY());
  }
  x.normalize();
  const Vec3 y = z.cross(x);
  Eigen::Matrix3d r;
  r.col(0) = x;
  r.col(1) = y;
  r.col(2) = z;
  return {Eigen::Quaterniond(r), eye};
}

}  // namespace vdi
