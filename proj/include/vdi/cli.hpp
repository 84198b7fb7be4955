#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vdi/camera.hpp"
#include "vdi/depth_image.hpp"
#include "vdi/occlusion.hpp"

namespace vdi::cli {

namespace fs = std::filesystem;

// Process exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInput = 2;        // bad input or validation failure
inline constexpr int kExitConsistency = 3;  // inputs disagree (frame counts, sizes)

int exit_code_for(const std::exception& e);

struct RenderArgs {
  fs::path urdf;
  fs::path trajectory;
  fs::path camera;
  fs::path out_dir;
  unsigned jobs = 0;  // frames in flight; 0 = hardware threads
  bool text_format = false;
};

struct OccludeArgs {
  fs::path actual_dir;
  fs::path urdf;
  fs::path trajectory;
  fs::path camera;
  fs::path out_dir;
  double epsilon = 0.01;
  std::optional<PixelBox> region;
  unsigned jobs = 0;
};

struct SimulateArgs {
  fs::path scenario;
  fs::path out_dir;
  std::optional<std::uint64_t> seed;  // overrides the scenario seed
};

struct TrackArgs {
  fs::path dataset_dir;
  std::string policy;  // "cv" or "hold"
  double threshold = 0.05;
  double epsilon = 0.01;
  double smoothing = 0.0;
  std::string target;  // empty: first target listed in the dataset
  fs::path out_csv;
};

// Each command returns an exit status and reports errors on `err`.
int cmd_render(const RenderArgs& args, std::ostream& out, std::ostream& err);
int cmd_occlude(const OccludeArgs& args, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err);
int cmd_track(const TrackArgs& args, std::ostream& out, std::ostream& err);

// Parses argv and dispatches to a command.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// "x,y,w,h" with positive w and h.
PixelBox parse_region(const std::string& text);

// Depth frames in `dir` (.png or .txt), sorted by file name.
std::vector<fs::path> list_frames(const fs::path& dir);

// File name of frame `index`, e.g. 000042.png.
std::string frame_name(std::size_t index, const char* extension = ".png");

// World position of a keypoint observed at subpixel (u, v), using the depth
// at the nearest pixel; nullopt if that pixel has no depth or lies outside.
std::optional<Vec3> keypoint_measurement(const CameraModel& cam, const DepthImage& actual, double u, double v);

// One row of a dataset's targets.csv.
struct TargetRecord {
  std::size_t frame = 0;
  double t = 0.0;
  std::string name;
  Vec3 position = Vec3::Zero();  // world-frame truth of the keypoint
  double u = 0.0;
  double v = 0.0;
  PixelBox region;
  double expected_fraction = 0.0;
};

std::string write_targets_csv(const std::vector<TargetRecord>& rows);
std::vector<TargetRecord> parse_targets_csv(const std::string& text);

}  // namespace vdi::cli
