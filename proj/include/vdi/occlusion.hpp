#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "vdi/camera.hpp"
#include "vdi/depth_image.hpp"

namespace vdi {

enum class OcclusionLabel : std::uint8_t {
  kNoRobot,   // robot does not cover the pixel in the VDI
  kVisible,   // measured surface is in front of the robot
  kUnknown,   // robot covers the pixel but the sensor has no depth there
  kOccluded,  // measurement comes from the robot body
};

const char* to_string(OcclusionLabel label);

struct OcclusionConfig {
  // Depth margin absorbing sensor noise and calibration error.
  double epsilon = 0.01;
};

class OcclusionMask {
 public:
  OcclusionMask() = default;
  OcclusionMask(int width, int height, OcclusionLabel fill = OcclusionLabel::kNoRobot)
      : width_(width), height_(height), labels_(static_cast<std::size_t>(width) * height, fill) {}

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return labels_.size(); }

  OcclusionLabel& at(int u, int v) { return labels_[static_cast<std::size_t>(v) * width_ + u]; }
  OcclusionLabel at(int u, int v) const { return labels_[static_cast<std::size_t>(v) * width_ + u]; }
  std::span<OcclusionLabel> labels() { return labels_; }
  std::span<const OcclusionLabel> labels() const { return labels_; }

  // Counts indexed by the label's underlying value.
  std::array<std::size_t, 4> counts() const;
  std::size_t count(OcclusionLabel label) const { return counts()[static_cast<std::size_t>(label)]; }

  friend bool operator==(const OcclusionMask&, const OcclusionMask&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<OcclusionLabel> labels_;
};

// d: actual sensor depth, dv: virtual (robot-only) depth; either may be the
// invalid sentinel.
OcclusionLabel classify_pixel(float d, float dv, const OcclusionConfig& cfg);

// Throws Error(kDimensionMismatch) unless both images share a shape.
OcclusionMask occlusion_mask(const DepthImage& actual, const DepthImage& vdi, const OcclusionConfig& cfg);

struct PixelBox {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;
};

struct Pixel {
  int u = 0;
  int v = 0;
};

// How pixels labelled Unknown enter a region's occlusion fraction.
enum class UnknownPolicy {
  kCountAsOccluded,  // default: conservative
  kCountAsVisible,
  kExclude,          // dropped from numerator and denominator
};

// Fraction of the region's pixels whose view is blocked by the robot. NoRobot
// and Visible pixels count as unoccluded. Throws Error(kInvalidArgument) for
// an empty region and Error(kOutOfBounds) if it leaves the image.
double region_occlusion_fraction(const OcclusionMask& mask, const PixelBox& box,
                                 UnknownPolicy policy = UnknownPolicy::kCountAsOccluded);
double region_occlusion_fraction(const OcclusionMask& mask, std::span<const Pixel> pixels,
                                 UnknownPolicy policy = UnknownPolicy::kCountAsOccluded);

struct OccludedSignal {};
struct UnknownSignal {};

// Either a camera-frame point that is safe to use, or a signal telling the
// caller why no point is returned.
using SafePoint = std::variant<Vec3, OccludedSignal, UnknownSignal>;

SafePoint safe_deproject(int u, int v, const DepthImage& actual, const OcclusionMask& mask, const CameraModel& cam);
// Subpixel variant: label and depth come from the pixel nearest (u, v), the
// returned point deprojects (u, v) itself.
SafePoint safe_deproject(double u, double v, const DepthImage& actual, const OcclusionMask& mask,
                         const CameraModel& cam);

// Occluded pixels are blended towards `tint` with weight `alpha`; every other
// pixel is copied unchanged.
inline constexpr Rgb kOverlayTint{255, 0, 255};
inline constexpr double kOverlayAlpha = 0.5;
RgbImage overlay(const OcclusionMask& mask, const RgbImage& color);

// Grayscale rendering of a depth image, useful as an overlay base when no
// colour frame is available. Invalid pixels are black.
RgbImage depth_to_rgb(const DepthImage& depth, double near_plane, double far_plane);

}  // namespace vdi
