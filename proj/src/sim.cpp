#include "vdi/sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "vdi/error.hpp"
#include "vdi/raycast.hpp"
#include "vdi/stl.hpp"

namespace vdi {

void Scene::validate() const {
  if (robot == nullptr) throw Error(ErrorCode::kInvalidArgument, "scene has no robot");
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw Error(ErrorCode::kInvalidArgument, "noise sigma must be finite and non-negative");
  }
  std::set<std::string, std::less<>> names;
  for (const auto& t : targets) {
    if (!names.insert(t.name).second) throw Error(ErrorCode::kInvalidArgument, "duplicate target name '" + t.name + "'");
    if (t.mesh.empty()) throw Error(ErrorCode::kInvalidArgument, "target '" + t.name + "' has an empty mesh");
    t.mesh.validate();
  }
  camera.validate();
}

OcclusionMask truth_mask(const DepthImage& robot_depth, const DepthImage& target_depth) {
  if (!robot_depth.same_shape(target_depth)) throw Error(ErrorCode::kDimensionMismatch, "oracle layers differ in size");
  OcclusionMask mask(robot_depth.width(), robot_depth.height());
  const auto r = robot_depth.data();
  const auto t = target_depth.data();
  auto labels = mask.labels();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!is_valid_depth(r[i])) {
      labels[i] = OcclusionLabel::kNoRobot;
    } else if (is_valid_depth(t[i]) && t[i] < r[i]) {
      labels[i] = OcclusionLabel::kVisible;
    } else {
      labels[i] = OcclusionLabel::kOccluded;
    }
  }
  return mask;
}

DepthImage add_depth_noise(const DepthImage& depth, double sigma, std::uint64_t seed, double near_plane,
                           double far_plane) {
  if (!(sigma >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "noise sigma must be non-negative");
  DepthImage out = depth;
  if (sigma == 0.0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  for (float& d : out.data()) {
    if (!is_valid_depth(d)) continue;
    d = static_cast<float>(std::clamp(d + noise(rng), near_plane, far_plane));
  }
  return out;
}

std::vector<bool> near_silhouette_edge(const std::vector<const DepthImage*>& layers, int radius) {
  if (layers.empty()) return {};
  const int w = layers.front()->width();
  const int h = layers.front()->height();
  for (const auto* layer : layers) {
    if (layer->width() != w || layer->height() != h) throw Error(ErrorCode::kDimensionMismatch, "layers differ in size");
  }
  std::vector<bool> edge(static_cast<std::size_t>(w) * h, false);
  for (const auto* layer : layers) {
    for (int v = 0; v < h; ++v) {
      for (int u = 0; u < w; ++u) {
        const bool hit = is_valid_depth(layer->at(u, v));
        for (int dv = -1; dv <= 1; ++dv) {
          for (int du = -1; du <= 1; ++du) {
            const int nu = u + du, nv = v + dv;
            if (nu < 0 || nv < 0 || nu >= w || nv >= h) continue;
            if (is_valid_depth(layer->at(nu, nv)) != hit) edge[static_cast<std::size_t>(v) * w + u] = true;
          }
        }
      }
    }
  }
  if (radius <= 0) return edge;
  std::vector<bool> grown(edge.size(), false);
  for (int v = 0; v < h; ++v) {
    for (int u = 0; u < w; ++u) {
      if (!edge[static_cast<std::size_t>(v) * w + u]) continue;
      for (int nv = std::max(0, v - radius); nv <= std::min(h - 1, v + radius); ++nv) {
        for (int nu = std::max(0, u - radius); nu <= std::min(w - 1, u + radius); ++nu) {
          grown[static_cast<std::size_t>(nv) * w + nu] = true;
        }
      }
    }
  }
  return grown;
}

PixelBox valid_bounds(const DepthImage& depth) {
  int min_u = depth.width(), min_v = depth.height(), max_u = -1, max_v = -1;
  for (int v = 0; v < depth.height(); ++v) {
    for (int u = 0; u < depth.width(); ++u) {
      if (!is_valid_depth(depth.at(u, v))) continue;
      min_u = std::min(min_u, u);
      max_u = std::max(max_u, u);
      min_v = std::min(min_v, v);
      max_v = std::max(max_v, v);
    }
  }
  if (max_u < 0) return {};
  return {min_u, min_v, max_u - min_u + 1, max_v - min_v + 1};
}

SensorFrame simulate_sensor(const Scene& scene, const RenderOptions& options) {
  scene.validate();
  const FkResult fk = forward_kinematics(*scene.robot, scene.joints);
  std::vector<PosedMesh> robot = posed_meshes(*scene.robot, fk.poses);
  std::vector<PosedMesh> targets;
  for (const auto& t : scene.targets) targets.push_back({&t.mesh, t.pose});
  std::vector<PosedMesh> all = robot;
  all.insert(all.end(), targets.begin(), targets.end());

  SensorFrame frame;
  frame.vdi = render_vdi(robot, scene.camera, options);
  frame.actual = add_depth_noise(render_vdi(all, scene.camera, options), scene.noise_sigma, scene.seed,
                                 scene.camera.near_plane, scene.camera.far_plane);
  frame.robot_depth = raycast_depth(robot, scene.camera);
  frame.target_depth = raycast_depth(targets, scene.camera);
  frame.truth = truth_mask(frame.robot_depth, frame.target_depth);
  return frame;
}

CameraModel ConveyorConfig::default_camera() {
  CameraModel cam;
  cam.width = 320;
  cam.height = 240;
  cam.fx = cam.fy = 300.0;
  cam.cx = 159.5;
  cam.cy = 119.5;
  cam.near_plane = 0.5;
  cam.far_plane = 3.0;
  // Half turn about x: optical axis pointing down, image x along world x.
  const RigidTransform pose(Eigen::Quaterniond(0.0, 1.0, 0.0, 0.0), Vec3(0.0, -0.45, 2.0));
  cam.world_to_camera = pose.inverse();
  return cam;
}

void ConveyorConfig::validate() const {
  if (!(duration >= 0.0) || !std::isfinite(duration)) throw Error(ErrorCode::kInvalidArgument, "duration must be >= 0");
  if (!(fps > 0.0) || !std::isfinite(fps)) throw Error(ErrorCode::kInvalidArgument, "fps must be positive");
  if (!std::isfinite(speed)) throw Error(ErrorCode::kInvalidArgument, "speed must be finite");
  if (!(window_start >= 0.0 && window_start <= window_end && window_end <= duration)) {
    throw Error(ErrorCode::kInvalidArgument, "occlusion window [" + std::to_string(window_start) + ", " +
                                                 std::to_string(window_end) + ") is not within [0, " +
                                                 std::to_string(duration) + "]");
  }
  if (!(box_size > 0.0 && box_height > 0.0)) throw Error(ErrorCode::kInvalidArgument, "box dimensions must be positive");
  if (!(noise_sigma >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "noise sigma must be non-negative");
  camera.validate();
}

TriangleMesh conveyor_box(const ConveyorConfig& cfg) { return make_box(Vec3(cfg.box_size, cfg.box_size, cfg.box_height)); }

std::vector<ConveyorFrame> conveyor_scenario(const RobotModel& robot, const ConveyorConfig& cfg,
                                             const RenderOptions& options) {
  cfg.validate();
  robot.joint(cfg.pan_joint);
  robot.joint(cfg.lift_joint);

  std::vector<ConveyorFrame> frames;
  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) / cfg.fps;
    if (!(t < cfg.duration)) break;

    ConveyorFrame f;
    f.index = k;
    const double x = cfg.start_x + cfg.speed * t;
    f.target_position = Vec3(x, cfg.lane_y, cfg.box_height);

    f.joints.timestamp = t;
    for (const auto& name : robot.movable_joint_names()) f.joints.positions[name] = 0.0;
    if (t >= cfg.window_start && t < cfg.window_end) {
      f.joints.positions[cfg.pan_joint] = std::atan2(cfg.lane_y, x);
      f.joints.positions[cfg.lift_joint] = cfg.reach_lift;
    }

    Scene scene;
    scene.robot = &robot;
    scene.joints = f.joints;
    scene.camera = cfg.camera;
    scene.noise_sigma = cfg.noise_sigma;
    scene.seed = cfg.seed + k;
    scene.targets.push_back({"box", conveyor_box(cfg), RigidTransform::from_translation(
                                                          Vec3(x, cfg.lane_y, 0.5 * cfg.box_height))});
    f.sensor = simulate_sensor(scene, options);
    f.keypoint = project(cfg.camera, f.target_position);
    f.region = valid_bounds(f.sensor.target_depth);
    if (f.region.width > 0) {
      std::size_t hidden = 0;
      for (int v = f.region.y; v < f.region.y + f.region.height; ++v) {
        for (int u = f.region.x; u < f.region.x + f.region.width; ++u) {
          if (f.sensor.truth.at(u, v) == OcclusionLabel::kOccluded) ++hidden;
        }
      }
      f.expected_fraction = static_cast<double>(hidden) / (static_cast<double>(f.region.width) * f.region.height);
    }
    frames.push_back(std::move(f));
  }
  return frames;
}

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

RigidTransform parse_pose(const YAML::Node& node, const std::string& what) {
  if (!node) return RigidTransform::identity();
  const auto v = node.as<std::vector<double>>();
  if (v.size() != 7) throw Error(ErrorCode::kParse, what + ": pose needs 7 numbers [tx, ty, tz, qw, qx, qy, qz]");
  const Eigen::Quaterniond q(v[3], v[4], v[5], v[6]);
  if (std::abs(q.norm() - 1.0) > 1e-6) throw Error(ErrorCode::kInvalidArgument, what + ": pose quaternion is not unit");
  return RigidTransform(q, Vec3(v[0], v[1], v[2]));
}

Vec3 parse_vec3(const YAML::Node& node, const std::string& what) {
  const auto v = node.as<std::vector<double>>();
  if (v.size() != 3) throw Error(ErrorCode::kParse, what + " needs 3 numbers");
  return {v[0], v[1], v[2]};
}

SceneTarget parse_target(const YAML::Node& node, const std::filesystem::path& base) {
  if (!node.IsMap() || !node["name"]) throw Error(ErrorCode::kParse, "scenario: every target needs a name");
  SceneTarget t;
  t.name = node["name"].as<std::string>();
  const std::string what = "target '" + t.name + "'";
  if (node["mesh"]) {
    t.mesh = load_stl(resolve(base, node["mesh"].as<std::string>()));
  } else if (node["box"]) {
    t.mesh = make_box(parse_vec3(node["box"], what + " box"));
  } else if (node["sphere"]) {
    t.mesh = make_sphere(node["sphere"].as<double>());
  } else if (node["cylinder"]) {
    const auto v = node["cylinder"].as<std::vector<double>>();
    if (v.size() != 2) throw Error(ErrorCode::kParse, what + ": cylinder needs [radius, length]");
    t.mesh = make_cylinder(v[0], v[1]);
  } else {
    throw Error(ErrorCode::kParse, what + ": needs one of mesh, box, sphere, cylinder");
  }
  if (node["scale"]) t.mesh.scale(parse_vec3(node["scale"], what + " scale"));
  t.pose = parse_pose(node["pose"], what);
  return t;
}

ConveyorConfig parse_conveyor(const YAML::Node& node) {
  if (!node.IsMap()) throw Error(ErrorCode::kParse, "scenario: conveyor must be a map");
  ConveyorConfig cfg;
  auto get = [&](const char* key, double& dst) {
    if (node[key]) dst = node[key].as<double>();
  };
  get("duration", cfg.duration);
  get("fps", cfg.fps);
  get("speed", cfg.speed);
  get("lane_y", cfg.lane_y);
  get("start_x", cfg.start_x);
  get("box_size", cfg.box_size);
  get("box_height", cfg.box_height);
  get("reach_lift", cfg.reach_lift);
  if (node["window"]) {
    const auto w = node["window"].as<std::vector<double>>();
    if (w.size() != 2) throw Error(ErrorCode::kParse, "scenario: conveyor window needs [start, end]");
    cfg.window_start = w[0];
    cfg.window_end = w[1];
  }
  if (node["pan_joint"]) cfg.pan_joint = node["pan_joint"].as<std::string>();
  if (node["lift_joint"]) cfg.lift_joint = node["lift_joint"].as<std::string>();
  return cfg;
}

}  // namespace

Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kParse, std::string("scenario: ") + e.what());
  }
  if (!root.IsMap()) throw Error(ErrorCode::kParse, "scenario must be a key/value map");

  Scenario s;
  try {
    if (!root["robot"]) throw Error(ErrorCode::kParse, "scenario: missing field 'robot'");
    s.robot = resolve(base_dir, root["robot"].as<std::string>());
    if (!std::filesystem::is_regular_file(s.robot)) {
      throw Error(ErrorCode::kIo, "scenario: robot file '" + s.robot.string() + "' does not exist");
    }
    if (root["noise_sigma"]) s.noise_sigma = root["noise_sigma"].as<double>();
    if (root["seed"]) s.seed = root["seed"].as<std::uint64_t>();
    if (!(s.noise_sigma >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "scenario: noise_sigma must be >= 0");

    if (root["conveyor"]) {
      ConveyorConfig cfg = parse_conveyor(root["conveyor"]);
      if (root["camera"]) cfg.camera = load_camera_file(resolve(base_dir, root["camera"].as<std::string>()));
      cfg.noise_sigma = s.noise_sigma;
      cfg.seed = s.seed;
      cfg.validate();
      s.camera = cfg.camera;
      s.conveyor = cfg;
    } else {
      if (!root["camera"]) throw Error(ErrorCode::kParse, "scenario: missing field 'camera'");
      if (!root["trajectory"]) throw Error(ErrorCode::kParse, "scenario: needs either 'conveyor' or 'trajectory'");
      s.camera = load_camera_file(resolve(base_dir, root["camera"].as<std::string>()));
      s.trajectory = load_trajectory_csv(resolve(base_dir, root["trajectory"].as<std::string>()));
      if (root["targets"]) {
        if (!root["targets"].IsSequence()) throw Error(ErrorCode::kParse, "scenario: targets must be a list");
        for (const auto& node : root["targets"]) s.targets.push_back(parse_target(node, base_dir));
      }
    }
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kParse, std::string("scenario: ") + e.what());
  }
  std::set<std::string, std::less<>> names;
  for (const auto& t : s.targets) {
    if (!names.insert(t.name).second) throw Error(ErrorCode::kInvalidArgument, "scenario: duplicate target '" + t.name + "'");
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open scenario '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path.parent_path());
}

}  // namespace vdi
