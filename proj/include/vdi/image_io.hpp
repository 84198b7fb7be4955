#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "vdi/depth_image.hpp"
#include "vdi/occlusion.hpp"

namespace vdi {

// 16-bit single-channel PNG in millimetres, 0 = invalid. Depths beyond
// 65.535 m saturate.
void write_depth_png(const std::filesystem::path& path, const DepthImage& depth, int compression_level = 1);
DepthImage read_depth_png(const std::filesystem::path& path);

// Lossless text format:
//   DEPTH32F <width> <height>
//   <row 0 values> ...
// Values are printed with enough digits to round-trip float32 exactly.
std::string write_depth_text(const DepthImage& depth);
DepthImage parse_depth_text(std::string_view text);

// Dispatches on extension: ".png" or ".txt".
void write_depth(const std::filesystem::path& path, const DepthImage& depth);
DepthImage read_depth(const std::filesystem::path& path);

// 8-bit single-channel PNG: 0=NoRobot, 64=Visible, 128=Unknown, 255=Occluded.
std::uint8_t mask_code(OcclusionLabel label);
OcclusionLabel label_from_code(std::uint8_t code);
void write_mask_png(const std::filesystem::path& path, const OcclusionMask& mask);
OcclusionMask read_mask_png(const std::filesystem::path& path);

void write_rgb_png(const std::filesystem::path& path, const RgbImage& image);
// Gray, palette and alpha inputs are converted to 8-bit RGB.
RgbImage read_rgb_png(const std::filesystem::path& path);

}  // namespace vdi
