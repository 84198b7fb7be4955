#include "vdi/cli.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <yaml-cpp/yaml.h>

#include "vdi/error.hpp"
#include "vdi/handlers.hpp"
#include "vdi/image_io.hpp"
#include "vdi/kinematics.hpp"
#include "vdi/rasterizer.hpp"
#include "vdi/raycast.hpp"
#include "vdi/robot_model.hpp"
#include "vdi/sim.hpp"

namespace vdi::cli {
namespace {

unsigned resolve_jobs(unsigned jobs) { return jobs != 0 ? jobs : std::max(1u, std::thread::hardware_concurrency()); }

// Runs produce(i) for i in [0, n) with at most `jobs` calls in flight and
// hands the results to consume(i, result) in index order.
template <class Produce, class Consume>
void ordered_pipeline(std::size_t n, unsigned jobs, Produce produce, Consume consume) {
  using Result = decltype(produce(std::size_t{0}));
  std::deque<std::future<Result>> in_flight;
  std::size_t next = 0;
  for (std::size_t done = 0; done < n; ++done) {
    while (next < n && in_flight.size() < jobs) {
      in_flight.push_back(std::async(std::launch::async, produce, next++));
    }
    Result r = in_flight.front().get();
    in_flight.pop_front();
    consume(done, std::move(r));
  }
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw Error(ErrorCode::kIo, "cannot create directory '" + dir.string() + "'");
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "failed writing '" + path.string() + "'");
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check_frame_shape(const DepthImage& depth, const CameraModel& cam, const fs::path& path) {
  if (depth.width() != cam.width || depth.height() != cam.height) {
    throw Error(ErrorCode::kDimensionMismatch, "frame '" + path.string() + "' is " + std::to_string(depth.width()) +
                                                   "x" + std::to_string(depth.height()) + " but the camera is " +
                                                   std::to_string(cam.width) + "x" + std::to_string(cam.height));
  }
}

template <class Fn>
int guarded(std::ostream& err, Fn fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (const auto* ve = dynamic_cast<const Error*>(&e)) {
    switch (ve->code()) {
      case ErrorCode::kFrameCountMismatch:
      case ErrorCode::kDimensionMismatch: return kExitConsistency;
      default: return kExitInput;
    }
  }
  if (dynamic_cast<const std::filesystem::filesystem_error*>(&e) != nullptr) return kExitInput;
  return kExitFailure;
}

PixelBox parse_region(const std::string& text) {
  std::vector<int> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "region '" + text + "' must be x,y,w,h integers");
    }
  }
  if (v.size() != 4) throw Error(ErrorCode::kInvalidArgument, "region '" + text + "' must be x,y,w,h");
  if (v[2] <= 0 || v[3] <= 0) throw Error(ErrorCode::kInvalidArgument, "region '" + text + "' must have positive size");
  return {v[0], v[1], v[2], v[3]};
}

std::vector<fs::path> list_frames(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::kIo, "frame directory '" + dir.string() + "' does not exist");
  std::vector<fs::path> frames;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto ext = entry.path().extension();
    if (entry.is_regular_file() && (ext == ".png" || ext == ".txt")) frames.push_back(entry.path());
  }
  std::sort(frames.begin(), frames.end());
  return frames;
}

std::string frame_name(std::size_t index, const char* extension) {
  std::ostringstream ss;
  ss << std::setw(6) << std::setfill('0') << index << extension;
  return ss.str();
}

std::optional<Vec3> keypoint_measurement(const CameraModel& cam, const DepthImage& actual, double u, double v) {
  if (!std::isfinite(u) || !std::isfinite(v)) return std::nullopt;
  const double ru = std::round(u), rv = std::round(v);
  if (ru < 0.0 || rv < 0.0 || ru >= actual.width() || rv >= actual.height()) return std::nullopt;
  const float d = actual.at(static_cast<int>(ru), static_cast<int>(rv));
  if (!is_valid_depth(d)) return std::nullopt;
  return cam.camera_to_world().apply(deproject(cam, u, v, d));
}

std::string write_targets_csv(const std::vector<TargetRecord>& rows) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "frame,t,name,x,y,z,u,v,region_x,region_y,region_w,region_h,expected_fraction\n";
  for (const auto& r : rows) {
    out << r.frame << ',' << r.t << ',' << r.name << ',' << r.position.x() << ',' << r.position.y() << ','
        << r.position.z() << ',' << r.u << ',' << r.v << ',' << r.region.x << ',' << r.region.y << ','
        << r.region.width << ',' << r.region.height << ',' << r.expected_fraction << '\n';
  }
  return out.str();
}

std::vector<TargetRecord> parse_targets_csv(const std::string& text) {
  std::vector<TargetRecord> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line.rfind("frame,", 0) != 0) throw Error(ErrorCode::kParse, "targets.csv: missing header");
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 13) throw Error(ErrorCode::kParse, "targets.csv line " + std::to_string(line_no) + ": expected 13 fields");
    try {
      TargetRecord r;
      r.frame = std::stoul(f[0]);
      r.t = std::stod(f[1]);
      r.name = f[2];
      r.position = Vec3(std::stod(f[3]), std::stod(f[4]), std::stod(f[5]));
      r.u = std::stod(f[6]);
      r.v = std::stod(f[7]);
      r.region = {std::stoi(f[8]), std::stoi(f[9]), std::stoi(f[10]), std::stoi(f[11])};
      r.expected_fraction = std::stod(f[12]);
      rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kParse, "targets.csv line " + std::to_string(line_no) + ": malformed number");
    }
  }
  return rows;
}

int cmd_render(const RenderArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RobotModel model = load_urdf(args.urdf);
    const auto trajectory = load_trajectory_csv(args.trajectory);
    const CameraModel cam = load_camera_file(args.camera);
    make_dir(args.out_dir);

    const unsigned jobs = resolve_jobs(args.jobs);
    RenderOptions opts;
    opts.threads = std::max(1u, std::max(1u, std::thread::hardware_concurrency()) / jobs);
    const char* ext = args.text_format ? ".txt" : ".png";

    struct Result {
      double ms;
      std::size_t silhouette;
    };
    const auto start = std::chrono::steady_clock::now();
    ordered_pipeline(
        trajectory.size(), jobs,
        [&](std::size_t i) {
          const auto t0 = std::chrono::steady_clock::now();
          const DepthImage depth = render_frame(model, trajectory[i], cam, opts);
          const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
          write_depth(args.out_dir / frame_name(i, ext), depth);
          return Result{ms, depth.valid_count()};
        },
        [&](std::size_t i, Result r) {
          out << "frame " << frame_name(i, "") << " render_ms " << std::fixed << std::setprecision(3) << r.ms
              << " silhouette " << r.silhouette << "\n";
        });
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out << "rendered " << trajectory.size() << " frames in " << std::fixed << std::setprecision(3) << secs << " s ("
        << std::setprecision(1) << (secs > 0.0 ? trajectory.size() / secs : 0.0) << " fps)\n";
    return kExitOk;
  });
}

int cmd_occlude(const OccludeArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!(args.epsilon >= 0.0) || !std::isfinite(args.epsilon)) {
      throw Error(ErrorCode::kInvalidArgument, "epsilon must be finite and non-negative");
    }
    const RobotModel model = load_urdf(args.urdf);
    const auto trajectory = load_trajectory_csv(args.trajectory);
    const CameraModel cam = load_camera_file(args.camera);
    const auto frames = list_frames(args.actual_dir);
    if (frames.size() != trajectory.size()) {
      throw Error(ErrorCode::kFrameCountMismatch, std::to_string(frames.size()) + " depth frames but " +
                                                      std::to_string(trajectory.size()) + " trajectory rows");
    }
    if (args.region) {
      const PixelBox& r = *args.region;
      if (r.x < 0 || r.y < 0 || r.x + r.width > cam.width || r.y + r.height > cam.height) {
        throw Error(ErrorCode::kOutOfBounds, "region lies outside the " + std::to_string(cam.width) + "x" +
                                                 std::to_string(cam.height) + " image");
      }
    }
    const OcclusionConfig cfg{args.epsilon};
    make_dir(args.out_dir / "masks");
    make_dir(args.out_dir / "overlays");
    std::ofstream stats(args.out_dir / "stats.csv");
    if (!stats) throw Error(ErrorCode::kIo, "cannot write stats.csv in '" + args.out_dir.string() + "'");
    stats << "frame,no_robot,visible,unknown,occluded" << (args.region ? ",region_fraction" : "") << "\n";

    const unsigned jobs = resolve_jobs(args.jobs);
    RenderOptions opts;
    opts.threads = std::max(1u, std::max(1u, std::thread::hardware_concurrency()) / jobs);

    struct Result {
      std::array<std::size_t, 4> counts;
      std::optional<double> fraction;
    };
    ordered_pipeline(
        frames.size(), jobs,
        [&](std::size_t i) {
          const DepthImage actual = read_depth(frames[i]);
          check_frame_shape(actual, cam, frames[i]);
          const DepthImage vdi = render_frame(model, trajectory[i], cam, opts);
          const OcclusionMask mask = occlusion_mask(actual, vdi, cfg);
          write_mask_png(args.out_dir / "masks" / frame_name(i), mask);
          write_rgb_png(args.out_dir / "overlays" / frame_name(i),
                        overlay(mask, depth_to_rgb(actual, cam.near_plane, cam.far_plane)));
          Result r{mask.counts(), std::nullopt};
          if (args.region) r.fraction = region_occlusion_fraction(mask, *args.region);
          return r;
        },
        [&](std::size_t i, Result r) {
          out << "frame " << frame_name(i, "");
          stats << i;
          for (auto label : {OcclusionLabel::kNoRobot, OcclusionLabel::kVisible, OcclusionLabel::kUnknown,
                             OcclusionLabel::kOccluded}) {
            const auto n = r.counts[static_cast<std::size_t>(label)];
            out << ' ' << to_string(label) << ' ' << n;
            stats << ',' << n;
          }
          if (r.fraction) {
            out << " region_fraction " << std::fixed << std::setprecision(6) << *r.fraction;
            stats << ',' << std::setprecision(9) << *r.fraction;
          }
          out << "\n";
          stats << "\n";
        });
    return kExitOk;
  });
}

int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Scenario scenario = load_scenario(args.scenario);
    if (args.seed) {
      scenario.seed = *args.seed;
      if (scenario.conveyor) scenario.conveyor->seed = *args.seed;
    }
    const RobotModel robot = load_urdf(scenario.robot);
    const CameraModel& cam = scenario.camera;
    for (const char* sub : {"actual", "vdi", "truth"}) make_dir(args.out_dir / sub);

    std::vector<JointState> trajectory;
    std::vector<TargetRecord> records;
    auto write_frame = [&](std::size_t i, const SensorFrame& f) {
      write_depth_png(args.out_dir / "actual" / frame_name(i), f.actual);
      write_depth_png(args.out_dir / "vdi" / frame_name(i), f.vdi);
      write_mask_png(args.out_dir / "truth" / frame_name(i), f.truth);
    };
    auto expected_fraction = [](const OcclusionMask& truth, const PixelBox& box) {
      if (box.width <= 0 || box.height <= 0) return 0.0;
      std::size_t hidden = 0;
      for (int v = box.y; v < box.y + box.height; ++v) {
        for (int u = box.x; u < box.x + box.width; ++u) hidden += truth.at(u, v) == OcclusionLabel::kOccluded;
      }
      return static_cast<double>(hidden) / (static_cast<double>(box.width) * box.height);
    };

    if (scenario.conveyor) {
      const auto frames = conveyor_scenario(robot, *scenario.conveyor);
      for (const auto& f : frames) {
        write_frame(f.index, f.sensor);
        trajectory.push_back(f.joints);
        records.push_back({f.index, f.joints.timestamp, "box", f.target_position, f.keypoint.u, f.keypoint.v, f.region,
                           f.expected_fraction});
      }
    } else {
      for (std::size_t i = 0; i < scenario.trajectory.size(); ++i) {
        Scene scene;
        scene.robot = &robot;
        scene.joints = scenario.trajectory[i];
        scene.targets = scenario.targets;
        scene.camera = cam;
        scene.noise_sigma = scenario.noise_sigma;
        scene.seed = scenario.seed + i;
        const SensorFrame f = simulate_sensor(scene);
        write_frame(i, f);
        trajectory.push_back(scene.joints);
        for (const auto& target : scenario.targets) {
          const PosedMesh pm{&target.mesh, target.pose};
          const PixelBox box = valid_bounds(raycast_depth({&pm, 1}, cam));
          const Vec3 p = target.pose.translation();
          const Vec3 pc = cam.world_to_camera.apply(p);
          const PixelProjection kp = pc.z() > 0.0 ? project_camera_frame(cam, pc)
                                                  : PixelProjection{std::nan(""), std::nan(""), pc.z()};
          records.push_back({i, scene.joints.timestamp, target.name, p, kp.u, kp.v, box,
                             expected_fraction(f.truth, box)});
        }
      }
    }

    write_file(args.out_dir / "camera.yaml", write_camera(cam));
    write_file(args.out_dir / "trajectory.csv", write_trajectory_csv(trajectory));
    write_file(args.out_dir / "targets.csv", write_targets_csv(records));

    YAML::Emitter manifest;
    manifest << YAML::BeginMap;
    manifest << YAML::Key << "frames" << YAML::Value << trajectory.size();
    manifest << YAML::Key << "robot" << YAML::Value << fs::absolute(scenario.robot).lexically_normal().string();
    manifest << YAML::Key << "camera" << YAML::Value << "camera.yaml";
    manifest << YAML::Key << "trajectory" << YAML::Value << "trajectory.csv";
    manifest << YAML::Key << "targets" << YAML::Value << "targets.csv";
    manifest << YAML::Key << "actual" << YAML::Value << "actual";
    manifest << YAML::Key << "vdi" << YAML::Value << "vdi";
    manifest << YAML::Key << "truth" << YAML::Value << "truth";
    manifest << YAML::Key << "noise_sigma" << YAML::Value << scenario.noise_sigma;
    manifest << YAML::Key << "seed" << YAML::Value << (scenario.conveyor ? scenario.conveyor->seed : scenario.seed);
    manifest << YAML::EndMap;
    write_file(args.out_dir / "manifest.yaml", std::string(manifest.c_str()) + "\n");

    out << "wrote " << trajectory.size() << " frames to " << args.out_dir.string() << "\n";
    return kExitOk;
  });
}

int cmd_track(const TrackArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const bool cv = args.policy == "cv";
    if (!cv && args.policy != "hold") {
      throw Error(ErrorCode::kInvalidArgument, "unknown policy '" + args.policy + "' (expected cv or hold)");
    }
    const PolicyConfig policy{args.threshold, args.smoothing};
    policy.validate();
    if (!(args.epsilon >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "epsilon must be non-negative");

    const fs::path dir = args.dataset_dir;
    YAML::Node manifest;
    try {
      manifest = YAML::Load(read_file(dir / "manifest.yaml"));
    } catch (const YAML::Exception& e) {
      throw Error(ErrorCode::kParse, std::string("manifest.yaml: ") + e.what());
    }
    auto entry = [&](const char* key) -> std::string {
      if (!manifest[key]) throw Error(ErrorCode::kParse, std::string("manifest.yaml: missing '") + key + "'");
      return manifest[key].as<std::string>();
    };
    const std::size_t frame_count = std::stoul(entry("frames"));
    const CameraModel cam = load_camera_file(dir / entry("camera"));
    const auto records = parse_targets_csv(read_file(dir / entry("targets")));
    const auto actual_frames = list_frames(dir / entry("actual"));
    const auto vdi_frames = list_frames(dir / entry("vdi"));
    if (actual_frames.size() != frame_count || vdi_frames.size() != frame_count) {
      throw Error(ErrorCode::kFrameCountMismatch, "dataset lists " + std::to_string(frame_count) + " frames but has " +
                                                      std::to_string(actual_frames.size()) + " actual and " +
                                                      std::to_string(vdi_frames.size()) + " vdi frames");
    }

    std::string target = args.target;
    if (target.empty() && !records.empty()) target = records.front().name;
    std::map<std::size_t, TargetRecord> by_frame;
    for (const auto& r : records) {
      if (r.name == target) by_frame[r.frame] = r;
    }
    if (frame_count > 0 && by_frame.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "dataset has no target named '" + target + "'");
    }

    std::ostringstream csv;
    csv << std::setprecision(17);
    csv << "frame,t,status,x,y,z,occlusion_fraction,error_vs_truth\n";
    TrackState track;
    std::optional<Vec3> held;
    std::map<std::string, std::size_t> tally;
    const OcclusionConfig occ{args.epsilon};
    for (std::size_t i = 0; i < frame_count; ++i) {
      const auto it = by_frame.find(i);
      if (it == by_frame.end()) throw Error(ErrorCode::kFrameCountMismatch, "targets.csv has no row for frame " + std::to_string(i));
      const TargetRecord& rec = it->second;
      const DepthImage actual = read_depth(actual_frames[i]);
      const DepthImage vdi = read_depth(vdi_frames[i]);
      check_frame_shape(actual, cam, actual_frames[i]);
      const OcclusionMask mask = occlusion_mask(actual, vdi, occ);
      const double fraction =
          rec.region.width > 0 && rec.region.height > 0 ? region_occlusion_fraction(mask, rec.region) : 0.0;

      std::string status;
      std::optional<Vec3> position;
      if (cv) {
        track = cv_update(track, keypoint_measurement(cam, actual, rec.u, rec.v), fraction, rec.t, policy);
        status = to_string(track.status);
        position = track.position_if_any();
      } else {
        std::optional<Vec3> seen;
        if (keypoint_measurement(cam, actual, rec.u, rec.v)) {
          const SafePoint sp = safe_deproject(rec.u, rec.v, actual, mask, cam);
          if (const auto* p = std::get_if<Vec3>(&sp)) seen = cam.camera_to_world().apply(*p);
        }
        held = hold_update(held, seen, !seen.has_value());
        status = seen ? "measured" : (held ? "held" : "empty");
        position = held;
      }
      ++tally[status];
      csv << i << ',' << rec.t << ',' << status << ',';
      if (position) {
        csv << position->x() << ',' << position->y() << ',' << position->z() << ',';
      } else {
        csv << ",,,";
      }
      csv << fraction << ',';
      if (position) csv << (*position - rec.position).norm();
      csv << '\n';
    }
    write_file(args.out_csv, csv.str());
    out << "tracked " << frame_count << " frames of '" << target << "' with policy " << args.policy << ":";
    for (const auto& [status, n] : tally) out << ' ' << status << ' ' << n;
    out << "\n";
    return kExitOk;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Robot self-occlusion detection from virtual depth images"};
  app.require_subcommand(1);

  RenderArgs render;
  auto* r = app.add_subcommand("render", "Render virtual depth images along a joint trajectory");
  r->add_option("--urdf", render.urdf, "Robot description (URDF)")->required();
  r->add_option("--trajectory", render.trajectory, "Joint trajectory CSV")->required();
  r->add_option("--camera", render.camera, "Camera config (YAML)")->required();
  r->add_option("--out", render.out_dir, "Output directory")->required();
  r->add_option("--jobs", render.jobs, "Frames in flight (0 = hardware threads)");
  std::string render_format = "png";
  r->add_option("--format", render_format, "png (16-bit millimeters) or txt (float meters)")
      ->check(CLI::IsMember({"png", "txt"}));

  OccludeArgs occlude;
  std::string occlude_region;
  auto* o = app.add_subcommand("occlude", "Label occluded pixels of recorded depth frames");
  o->add_option("--actual", occlude.actual_dir, "Directory of depth frames")->required();
  o->add_option("--urdf", occlude.urdf, "Robot description (URDF)")->required();
  o->add_option("--trajectory", occlude.trajectory, "Joint trajectory CSV, one row per frame")->required();
  o->add_option("--camera", occlude.camera, "Camera config (YAML)")->required();
  o->add_option("--out", occlude.out_dir, "Output directory")->required();
  o->add_option("--epsilon", occlude.epsilon, "Depth margin in meters")->capture_default_str();
  o->add_option("--region", occlude_region, "Region of interest x,y,w,h");
  o->add_option("--jobs", occlude.jobs, "Frames in flight (0 = hardware threads)");

  SimulateArgs simulate;
  std::uint64_t seed = 0;
  auto* s = app.add_subcommand("simulate", "Generate a synthetic dataset from a scenario file");
  s->add_option("--scenario", simulate.scenario, "Scenario description (YAML)")->required();
  s->add_option("--out", simulate.out_dir, "Output directory")->required();
  auto* seed_opt = s->add_option("--seed", seed, "Override the scenario's noise seed");

  TrackArgs track;
  auto* t = app.add_subcommand("track", "Track a target through a dataset");
  t->add_option("--dataset", track.dataset_dir, "Dataset directory written by simulate")->required();
  t->add_option("--policy", track.policy, "cv (constant velocity) or hold")->required();
  t->add_option("--threshold", track.threshold, "Occlusion fraction above which cv predicts")->capture_default_str();
  t->add_option("--epsilon", track.epsilon, "Depth margin in meters")->capture_default_str();
  t->add_option("--smoothing", track.smoothing, "Velocity smoothing weight in [0, 1]")->capture_default_str();
  t->add_option("--target", track.target, "Target name (default: first in dataset)");
  t->add_option("--out", track.out_csv, "Output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  if (r->parsed()) {
    render.text_format = render_format == "txt";
    return cmd_render(render, out, err);
  }
  if (o->parsed()) {
    if (!occlude_region.empty()) {
      const int rc = guarded(err, [&] {
        occlude.region = parse_region(occlude_region);
        return kExitOk;
      });
      if (rc != kExitOk) return rc;
    }
    return cmd_occlude(occlude, out, err);
  }
  if (s->parsed()) {
    if (seed_opt->count() > 0) simulate.seed = seed;
    return cmd_simulate(simulate, out, err);
  }
  return cmd_track(track, out, err);
}

}  // namespace vdi::cli
