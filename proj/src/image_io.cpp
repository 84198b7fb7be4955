#include "vdi/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>

#include "vdi/error.hpp"

namespace vdi {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw Error(ErrorCode::kIo, std::string("cannot open '") + path.string() + "' (" + mode + ")");
  return f;
}

// Rows are tightly packed, 16-bit samples big-endian as PNG stores them.
void write_png(const std::filesystem::path& path, int width, int height, int bit_depth, int color_type,
               const std::vector<std::uint8_t>& data, int level) {
  FilePtr file = open_file(path, "wb");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    throw Error(ErrorCode::kIo, "libpng initialisation failed");
  }
  const std::size_t stride = data.size() / static_cast<std::size_t>(height);
  std::vector<png_bytep> rows(static_cast<std::size_t>(height));
  for (int y = 0; y < height; ++y) {
    rows[static_cast<std::size_t>(y)] = const_cast<png_bytep>(data.data() + stride * static_cast<std::size_t>(y));
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error(ErrorCode::kIo, "failed to encode PNG '" + path.string() + "'");
  }
  png_init_io(png, file.get());
  png_set_compression_level(png, level);
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), bit_depth, color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

enum class ReadAs { kGray8, kGray16, kRgb8 };

struct PngData {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bytes;
};

PngData read_png(const std::filesystem::path& path, ReadAs mode) {
  FilePtr file = open_file(path, "rb");
  png_byte sig[8];
  if (std::fread(sig, 1, 8, file.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
    throw Error(ErrorCode::kParse, "'" + path.string() + "' is not a PNG file");
  }
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error(ErrorCode::kIo, "libpng initialisation failed");
  }
  PngData out;
  std::vector<png_bytep> rows;
  // 0: ok, 1: decode error, 2: format mismatch
  int failure = 0;
  if (setjmp(png_jmpbuf(png))) {
    failure = 1;
  } else {
    png_init_io(png, file.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);
    const int bit_depth = png_get_bit_depth(png, info);
    const int color_type = png_get_color_type(png, info);
    out.width = static_cast<int>(png_get_image_width(png, info));
    out.height = static_cast<int>(png_get_image_height(png, info));
    switch (mode) {
      case ReadAs::kGray16:
        if (color_type != PNG_COLOR_TYPE_GRAY || bit_depth != 16) failure = 2;
        break;
      case ReadAs::kGray8:
        if (color_type != PNG_COLOR_TYPE_GRAY || bit_depth != 8) failure = 2;
        break;
      case ReadAs::kRgb8:
        if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
        if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
        if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_gray_to_rgb(png);
        if ((color_type & PNG_COLOR_MASK_ALPHA) || png_get_valid(png, info, PNG_INFO_tRNS)) {
          png_set_strip_alpha(png);
        }
        if (bit_depth == 16) png_set_strip_16(png);
        break;
    }
    if (failure == 0) {
      png_read_update_info(png, info);
      const std::size_t stride = png_get_rowbytes(png, info);
      out.bytes.resize(stride * static_cast<std::size_t>(out.height));
      rows.resize(static_cast<std::size_t>(out.height));
      for (int y = 0; y < out.height; ++y) rows[static_cast<std::size_t>(y)] = out.bytes.data() + stride * static_cast<std::size_t>(y);
      png_read_image(png, rows.data());
      png_read_end(png, nullptr);
    }
  }
  png_destroy_read_struct(&png, &info, nullptr);
  if (failure == 1) throw Error(ErrorCode::kParse, "failed to decode PNG '" + path.string() + "'");
  if (failure == 2) {
    const char* want = mode == ReadAs::kGray16 ? "16-bit grayscale" : "8-bit grayscale";
    throw Error(ErrorCode::kParse, "'" + path.string() + "' is not a " + want + " PNG");
  }
  return out;
}

}  // namespace

void write_depth_png(const std::filesystem::path& path, const DepthImage& depth, int compression_level) {
  std::vector<std::uint8_t> bytes(depth.size() * 2);
  const auto d = depth.data();
  for (std::size_t i = 0; i < d.size(); ++i) {
    std::uint16_t mm = 0;
    if (is_valid_depth(d[i])) {
      const double v = std::round(static_cast<double>(d[i]) * 1000.0);
      mm = static_cast<std::uint16_t>(std::clamp(v, 1.0, 65535.0));
    }
    bytes[2 * i] = static_cast<std::uint8_t>(mm >> 8);
    bytes[2 * i + 1] = static_cast<std::uint8_t>(mm & 0xff);
  }
  write_png(path, depth.width(), depth.height(), 16, PNG_COLOR_TYPE_GRAY, bytes, compression_level);
}

DepthImage read_depth_png(const std::filesystem::path& path) {
  const PngData png = read_png(path, ReadAs::kGray16);
  DepthImage depth(png.width, png.height);
  auto d = depth.data();
  for (std::size_t i = 0; i < d.size(); ++i) {
    const std::uint16_t mm = static_cast<std::uint16_t>((png.bytes[2 * i] << 8) | png.bytes[2 * i + 1]);
    d[i] = mm == 0 ? DepthImage::kInvalid : static_cast<float>(mm) / 1000.0f;
  }
  return depth;
}

std::string write_depth_text(const DepthImage& depth) {
  std::ostringstream os;
  os.precision(std::numeric_limits<float>::max_digits10);
  os << "DEPTH32F " << depth.width() << " " << depth.height() << "\n";
  for (int v = 0; v < depth.height(); ++v) {
    for (int u = 0; u < depth.width(); ++u) {
      if (u) os << ' ';
      os << depth.at(u, v);
    }
    os << "\n";
  }
  return os.str();
}

DepthImage parse_depth_text(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string magic;
  int w = 0, h = 0;
  if (!(is >> magic >> w >> h) || magic != "DEPTH32F" || w <= 0 || h <= 0) {
    throw Error(ErrorCode::kParse, "depth text: expected header 'DEPTH32F <width> <height>'");
  }
  DepthImage depth(w, h);
  for (float& v : depth.data()) {
    if (!(is >> v)) throw Error(ErrorCode::kParse, "depth text: fewer values than width x height");
    if (!std::isfinite(v) || v < 0.0f) throw Error(ErrorCode::kParse, "depth text: negative or non-finite value");
  }
  std::string extra;
  if (is >> extra) throw Error(ErrorCode::kParse, "depth text: trailing data after width x height values");
  return depth;
}

void write_depth(const std::filesystem::path& path, const DepthImage& depth) {
  if (path.extension() == ".txt") {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
    out << write_depth_text(depth);
    return;
  }
  write_depth_png(path, depth);
}

DepthImage read_depth(const std::filesystem::path& path) {
  if (path.extension() == ".txt") {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_depth_text(buf.str());
  }
  return read_depth_png(path);
}

std::uint8_t mask_code(OcclusionLabel label) {
  switch (label) {
    case OcclusionLabel::kNoRobot: return 0;
    case OcclusionLabel::kVisible: return 64;
    case OcclusionLabel::kUnknown: return 128;
    case OcclusionLabel::kOccluded: return 255;
  }
  return 0;
}

OcclusionLabel label_from_code(std::uint8_t code) {
  switch (code) {
    case 0: return OcclusionLabel::kNoRobot;
    case 64: return OcclusionLabel::kVisible;
    case 128: return OcclusionLabel::kUnknown;
    case 255: return OcclusionLabel::kOccluded;
    default: break;
  }
  throw Error(ErrorCode::kParse, "invalid mask value " + std::to_string(code));
}

void write_mask_png(const std::filesystem::path& path, const OcclusionMask& mask) {
  std::vector<std::uint8_t> bytes(mask.size());
  const auto labels = mask.labels();
  for (std::size_t i = 0; i < labels.size(); ++i) bytes[i] = mask_code(labels[i]);
  write_png(path, mask.width(), mask.height(), 8, PNG_COLOR_TYPE_GRAY, bytes, 6);
}

OcclusionMask read_mask_png(const std::filesystem::path& path) {
  const PngData png = read_png(path, ReadAs::kGray8);
  OcclusionMask mask(png.width, png.height);
  auto labels = mask.labels();
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = label_from_code(png.bytes[i]);
  return mask;
}

void write_rgb_png(const std::filesystem::path& path, const RgbImage& image) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(image.pixels.size() * 3);
  for (const Rgb& p : image.pixels) {
    bytes.push_back(p.r);
    bytes.push_back(p.g);
    bytes.push_back(p.b);
  }
  write_png(path, image.width, image.height, 8, PNG_COLOR_TYPE_RGB, bytes, 3);
}

RgbImage read_rgb_png(const std::filesystem::path& path) {
  const PngData png = read_png(path, ReadAs::kRgb8);
  RgbImage image(png.width, png.height);
  for (std::size_t i = 0; i < image.pixels.size(); ++i) {
    image.pixels[i] = {png.bytes[3 * i], png.bytes[3 * i + 1], png.bytes[3 * i + 2]};
  }
  return image;
}

}  // namespace vdi
