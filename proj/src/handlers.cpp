#include "vdi/handlers.hpp"

#include <cmath>
#include <string>

#include "vdi/error.hpp"

namespace vdi {

const char* to_string(TrackStatus status) {
  switch (status) {
    case TrackStatus::kEmpty: return "empty";
    case TrackStatus::kMeasured: return "measured";
    case TrackStatus::kPredicted: return "predicted";
  }
  return "invalid";
}

void PolicyConfig::validate() const {
  if (!(occlusion_threshold >= 0.0 && occlusion_threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "occlusion threshold must lie in [0, 1]");
  }
  if (!(velocity_smoothing >= 0.0 && velocity_smoothing <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "velocity smoothing must lie in [0, 1]");
  }
}

TrackState cv_update(const TrackState& state, const std::optional<Vec3>& measurement, double occlusion_fraction,
                     double t, const PolicyConfig& cfg,
                     const std::optional<Eigen::Quaterniond>& measured_orientation) {
  cfg.validate();
  if (!std::isfinite(t)) throw Error(ErrorCode::kInvalidArgument, "timestamp is not finite");
  if (state.status != TrackStatus::kEmpty && !(t > state.timestamp)) {
    throw Error(ErrorCode::kInvalidArgument, "timestamp " + std::to_string(t) + " does not advance past " +
                                                 std::to_string(state.timestamp));
  }
  if (measurement && !measurement->allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "measurement is not finite");
  }

  if (measured_orientation && !measured_orientation->coeffs().allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "orientation is not finite");
  }

  TrackState next = state;
  next.timestamp = t;
  const bool usable = measurement.has_value() && occlusion_fraction <= cfg.occlusion_threshold;
  if (usable && measured_orientation) next.orientation = measured_orientation->normalized();

  if (state.status == TrackStatus::kEmpty) {
    if (usable) {
      next.position = *measurement;
      next.velocity = Vec3::Zero();
      next.has_velocity = false;
      next.status = TrackStatus::kMeasured;
    }
    return next;
  }

  const double dt = t - state.timestamp;
  if (usable) {
    const Vec3 raw = (*measurement - state.position) / dt;
    next.velocity = state.has_velocity
                        ? ((1.0 - cfg.velocity_smoothing) * raw + cfg.velocity_smoothing * state.velocity).eval()
                        : raw;
    next.has_velocity = true;
    next.position = *measurement;
    next.status = TrackStatus::kMeasured;
  } else {
    next.position = state.position + state.velocity * dt;
    next.status = TrackStatus::kPredicted;
  }
  return next;
}

std::optional<Vec3> hold_update(const std::optional<Vec3>& state, const std::optional<Vec3>& target, bool occluded) {
  if (!occluded && target) return target;
  return state;
}

}  // namespace vdi
