#include "vdi/camera.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "vdi/error.hpp"

namespace vdi {

void CameraModel::validate() const {
  auto bad = [](const std::string& msg) { throw Error(ErrorCode::kInvalidArgument, "camera: " + msg); };
  if (width <= 0 || height <= 0) bad("width and height must be positive");
  if (!(fx > 0.0) || !(fy > 0.0)) bad("focal lengths must be positive");
  if (!(cx > 0.0 && cx < width) || !(cy > 0.0 && cy < height)) bad("principal point must lie inside the image");
  if (!(near_plane > 0.0) || !(near_plane < far_plane) || !std::isfinite(far_plane)) {
    bad("range must satisfy 0 < near < far");
  }
}

PixelProjection project_camera_frame(const CameraModel& cam, const Vec3& p) {
  if (!(p.z() > 0.0)) throw Error(ErrorCode::kBehindCamera, "point is behind the camera");
  return {cam.fx * p.x() / p.z() + cam.cx, cam.fy * p.y() / p.z() + cam.cy, p.z()};
}

PixelProjection project(const CameraModel& cam, const Vec3& p_world) {
  return project_camera_frame(cam, cam.world_to_camera.apply(p_world));
}

Vec3 deproject(const CameraModel& cam, double u, double v, double depth) {
  if (!std::isfinite(depth) || !(depth > 0.0)) {
    throw Error(ErrorCode::kInvalidDepth, "cannot deproject with depth " + std::to_string(depth));
  }
  return {depth * (u - cam.cx) / cam.fx, depth * (v - cam.cy) / cam.fy, depth};
}

CameraModel load_camera(std::string_view config_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(config_text));
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kParse, std::string("camera config: ") + e.what());
  }
  if (!root.IsMap()) throw Error(ErrorCode::kParse, "camera config must be a key/value map");

  auto field = [&](const char* key) -> YAML::Node {
    YAML::Node n = root[key];
    if (!n) throw Error(ErrorCode::kParse, std::string("camera config: missing field '") + key + "'");
    return n;
  };
  CameraModel cam;
  try {
    cam.width = field("width").as<int>();
    cam.height = field("height").as<int>();
    cam.fx = field("fx").as<double>();
    cam.fy = field("fy").as<double>();
    cam.cx = field("cx").as<double>();
    cam.cy = field("cy").as<double>();
    cam.near_plane = field("near").as<double>();
    cam.far_plane = field("far").as<double>();
    const auto pose = field("pose").as<std::vector<double>>();
    if (pose.size() != 7) throw Error(ErrorCode::kParse, "camera config: pose needs 7 numbers [tx, ty, tz, qw, qx, qy, qz]");
    const Eigen::Quaterniond q(pose[3], pose[4], pose[5], pose[6]);
    if (std::abs(q.norm() - 1.0) > 1e-6) {
      throw Error(ErrorCode::kInvalidArgument,
                  "camera config: pose quaternion is not unit (norm " + std::to_string(q.norm()) + ")");
    }
    cam.world_to_camera = RigidTransform(q, Vec3(pose[0], pose[1], pose[2])).inverse();
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kParse, std::string("camera config: ") + e.what());
  }
  cam.validate();
  return cam;
}

CameraModel load_camera_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open camera config '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_camera(buf.str());
}

std::string write_camera(const CameraModel& cam) {
  const RigidTransform pose = cam.camera_to_world();
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "width" << YAML::Value << cam.width;
  out << YAML::Key << "height" << YAML::Value << cam.height;
  out << YAML::Key << "fx" << YAML::Value << cam.fx;
  out << YAML::Key << "fy" << YAML::Value << cam.fy;
  out << YAML::Key << "cx" << YAML::Value << cam.cx;
  out << YAML::Key << "cy" << YAML::Value << cam.cy;
  out << YAML::Key << "near" << YAML::Value << cam.near_plane;
  out << YAML::Key << "far" << YAML::Value << cam.far_plane;
  const auto& t = pose.translation();
  const auto& q = pose.rotation();
  out << YAML::Key << "pose" << YAML::Value << YAML::Flow
      << std::vector<double>{t.x(), t.y(), t.z(), q.w(), q.x(), q.y(), q.z()};
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace vdi
