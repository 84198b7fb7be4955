#pragma once

#include <optional>

#include "vdi/transform.hpp"

namespace vdi {

enum class TrackStatus { kEmpty, kMeasured, kPredicted };

const char* to_string(TrackStatus status);

// Position-only constant-velocity track of one target (world frame).
struct TrackState {
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  double timestamp = 0.0;
  TrackStatus status = TrackStatus::kEmpty;
  // False until two measurements have produced a finite difference.
  bool has_velocity = false;
  // Last measured orientation, if the detector supplies one. Never
  // extrapolated.
  std::optional<Eigen::Quaterniond> orientation;

  std::optional<Vec3> position_if_any() const {
    if (status == TrackStatus::kEmpty) return std::nullopt;
    return position;
  }
};

struct PolicyConfig {
  // Prediction takes over when the occlusion fraction is strictly above this.
  double occlusion_threshold = 0.05;
  // Weight of the previous velocity when blending in a new finite difference;
  // 0 keeps the raw difference.
  double velocity_smoothing = 0.0;

  void validate() const;
};

// One constant-velocity step. Uses the measurement when the target is
// occluded by at most `occlusion_threshold`, otherwise extrapolates the last
// position with the last velocity. Throws Error(kInvalidArgument) for a
// non-increasing timestamp or a non-finite measurement. A measured
// orientation replaces the stored one whenever the position measurement is
// used.
TrackState cv_update(const TrackState& state, const std::optional<Vec3>& measurement, double occlusion_fraction,
                     double t, const PolicyConfig& cfg,
                     const std::optional<Eigen::Quaterniond>& measured_orientation = std::nullopt);

// Keeps the last target seen while not occluded.
std::optional<Vec3> hold_update(const std::optional<Vec3>& state, const std::optional<Vec3>& target, bool occluded);

}  // namespace vdi
