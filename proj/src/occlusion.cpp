#include "vdi/occlusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vdi/error.hpp"

namespace vdi {

const char* to_string(OcclusionLabel label) {
  switch (label) {
    case OcclusionLabel::kNoRobot: return "no_robot";
    case OcclusionLabel::kVisible: return "visible";
    case OcclusionLabel::kUnknown: return "unknown";
    case OcclusionLabel::kOccluded: return "occluded";
  }
  return "invalid";
}

std::array<std::size_t, 4> OcclusionMask::counts() const {
  std::array<std::size_t, 4> c{};
  for (auto l : labels_) ++c[static_cast<std::size_t>(l)];
  return c;
}

OcclusionLabel classify_pixel(float d, float dv, const OcclusionConfig& cfg) {
  if (!is_valid_depth(dv)) return OcclusionLabel::kNoRobot;
  if (!is_valid_depth(d)) return OcclusionLabel::kUnknown;
  // d < dv - eps: the measured point lies between the camera and the robot.
  if (static_cast<double>(d) < static_cast<double>(dv) - cfg.epsilon) return OcclusionLabel::kVisible;
  return OcclusionLabel::kOccluded;
}

OcclusionMask occlusion_mask(const DepthImage& actual, const DepthImage& vdi, const OcclusionConfig& cfg) {
  if (!actual.same_shape(vdi)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "actual frame is " + std::to_string(actual.width()) + "x" + std::to_string(actual.height()) +
                    " but the VDI is " + std::to_string(vdi.width()) + "x" + std::to_string(vdi.height()));
  }
  if (!(cfg.epsilon >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "epsilon must be >= 0");
  OcclusionMask mask(actual.width(), actual.height());
  const auto d = actual.data();
  const auto dv = vdi.data();
  auto out = mask.labels();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = classify_pixel(d[i], dv[i], cfg);
  return mask;
}

namespace {

double fraction_from_counts(const std::array<std::size_t, 4>& c, std::size_t total, UnknownPolicy policy) {
  const std::size_t unknown = c[static_cast<std::size_t>(OcclusionLabel::kUnknown)];
  std::size_t occluded = c[static_cast<std::size_t>(OcclusionLabel::kOccluded)];
  std::size_t denom = total;
  switch (policy) {
    case UnknownPolicy::kCountAsOccluded: occluded += unknown; break;
    case UnknownPolicy::kCountAsVisible: break;
    case UnknownPolicy::kExclude: denom -= unknown; break;
  }
  return denom == 0 ? 0.0 : static_cast<double>(occluded) / static_cast<double>(denom);
}

}  // namespace

double region_occlusion_fraction(const OcclusionMask& mask, const PixelBox& box, UnknownPolicy policy) {
  if (box.width <= 0 || box.height <= 0) throw Error(ErrorCode::kInvalidArgument, "region is empty");
  if (box.x < 0 || box.y < 0 || box.x + box.width > mask.width() || box.y + box.height > mask.height()) {
    throw Error(ErrorCode::kOutOfBounds, "region leaves the image");
  }
  std::array<std::size_t, 4> c{};
  for (int v = box.y; v < box.y + box.height; ++v) {
    for (int u = box.x; u < box.x + box.width; ++u) ++c[static_cast<std::size_t>(mask.at(u, v))];
  }
  return fraction_from_counts(c, static_cast<std::size_t>(box.width) * box.height, policy);
}

double region_occlusion_fraction(const OcclusionMask& mask, std::span<const Pixel> pixels, UnknownPolicy policy) {
  if (pixels.empty()) throw Error(ErrorCode::kInvalidArgument, "region is empty");
  std::array<std::size_t, 4> c{};
  for (const auto& p : pixels) {
    if (p.u < 0 || p.v < 0 || p.u >= mask.width() || p.v >= mask.height()) {
      throw Error(ErrorCode::kOutOfBounds, "region pixel (" + std::to_string(p.u) + ", " + std::to_string(p.v) +
                                               ") leaves the image");
    }
    ++c[static_cast<std::size_t>(mask.at(p.u, p.v))];
  }
  return fraction_from_counts(c, pixels.size(), policy);
}

SafePoint safe_deproject(int u, int v, const DepthImage& actual, const OcclusionMask& mask, const CameraModel& cam) {
  if (u < 0 || v < 0 || u >= actual.width() || v >= actual.height()) {
    throw Error(ErrorCode::kOutOfBounds, "pixel (" + std::to_string(u) + ", " + std::to_string(v) + ") is outside the image");
  }
  if (mask.width() != actual.width() || mask.height() != actual.height()) {
    throw Error(ErrorCode::kDimensionMismatch, "mask and depth frame differ in size");
  }
  switch (mask.at(u, v)) {
    case OcclusionLabel::kOccluded: return OccludedSignal{};
    case OcclusionLabel::kUnknown: return UnknownSignal{};
    case OcclusionLabel::kVisible:
    case OcclusionLabel::kNoRobot: break;
  }
  const float d = actual.at(u, v);
  if (!is_valid_depth(d)) return UnknownSignal{};
  return deproject(cam, u, v, d);
}

SafePoint safe_deproject(double u, double v, const DepthImage& actual, const OcclusionMask& mask,
                         const CameraModel& cam) {
  if (!std::isfinite(u) || !std::isfinite(v)) throw Error(ErrorCode::kOutOfBounds, "pixel coordinate is not finite");
  const double ru = std::round(u), rv = std::round(v);
  if (ru < 0.0 || rv < 0.0 || ru >= actual.width() || rv >= actual.height()) {
    throw Error(ErrorCode::kOutOfBounds, "point (" + std::to_string(u) + ", " + std::to_string(v) + ") is outside the image");
  }
  const SafePoint nearest = safe_deproject(static_cast<int>(ru), static_cast<int>(rv), actual, mask, cam);
  if (!std::holds_alternative<Vec3>(nearest)) return nearest;
  return deproject(cam, u, v, actual.at(static_cast<int>(ru), static_cast<int>(rv)));
}

RgbImage overlay(const OcclusionMask& mask, const RgbImage& color) {
  if (mask.width() != color.width || mask.height() != color.height) {
    throw Error(ErrorCode::kDimensionMismatch, "mask and colour image differ in size");
  }
  RgbImage out = color;
  auto blend = [](std::uint8_t a, std::uint8_t b) {
    return static_cast<std::uint8_t>(std::lround((1.0 - kOverlayAlpha) * a + kOverlayAlpha * b));
  };
  const auto labels = mask.labels();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != OcclusionLabel::kOccluded) continue;
    Rgb& p = out.pixels[i];
    p = {blend(p.r, kOverlayTint.r), blend(p.g, kOverlayTint.g), blend(p.b, kOverlayTint.b)};
  }
  return out;
}

RgbImage depth_to_rgb(const DepthImage& depth, double near_plane, double far_plane) {
  RgbImage out(depth.width(), depth.height());
  const auto d = depth.data();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!is_valid_depth(d[i])) continue;
    const double t = std::clamp((far_plane - d[i]) / (far_plane - near_plane), 0.0, 1.0);
    const auto g = static_cast<std::uint8_t>(std::lround(40.0 + 215.0 * t));
    out.pixels[i] = {g, g, g};
  }
  return out;
}

}  // namespace vdi
