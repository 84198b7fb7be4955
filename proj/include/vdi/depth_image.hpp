#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace vdi {

// Row-major metric depth grid. 0 marks an invalid pixel (no return / not
// covered), matching the usual RGB-D convention.
class DepthImage {
 public:
  static constexpr float kInvalid = 0.0f;

  DepthImage() = default;
  DepthImage(int width, int height, float fill = kInvalid)
      : width_(width), height_(height), data_(static_cast<std::size_t>(width) * height, fill) {}

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }

  float& at(int u, int v) { return data_[index(u, v)]; }
  float at(int u, int v) const { return data_[index(u, v)]; }
  std::size_t index(int u, int v) const { return static_cast<std::size_t>(v) * width_ + u; }

  std::span<float> data() { return data_; }
  std::span<const float> data() const { return data_; }

  std::size_t valid_count() const;
  bool same_shape(const DepthImage& other) const { return width_ == other.width_ && height_ == other.height_; }

  friend bool operator==(const DepthImage&, const DepthImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<float> data_;
};

inline bool is_valid_depth(float d) { return std::isfinite(d) && d > 0.0f; }

inline std::size_t DepthImage::valid_count() const {
  std::size_t n = 0;
  for (float d : data_) n += is_valid_depth(d) ? 1 : 0;
  return n;
}

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<Rgb> pixels;

  RgbImage() = default;
  RgbImage(int w, int h, Rgb fill = {}) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}
  Rgb& at(int u, int v) { return pixels[static_cast<std::size_t>(v) * width + u]; }
  const Rgb& at(int u, int v) const { return pixels[static_cast<std::size_t>(v) * width + u]; }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

}  // namespace vdi
