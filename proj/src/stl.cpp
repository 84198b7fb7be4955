#include "vdi/stl.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>
#include <string_view>

#include "vdi/error.hpp"

namespace vdi {
namespace {

constexpr std::size_t kHeaderBytes = 80;
constexpr std::size_t kFacetBytes = 50;

std::uint32_t read_u32_le(const std::byte* p) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | std::to_integer<std::uint32_t>(p[i]);
  return v;
}

float read_f32_le(const std::byte* p) { return std::bit_cast<float>(read_u32_le(p)); }

void write_u32_le(std::vector<std::byte>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xffu));
}

void write_f32_le(std::vector<std::byte>& out, float f) { write_u32_le(out, std::bit_cast<std::uint32_t>(f)); }

TriangleMesh parse_binary(std::span<const std::byte> bytes) {
  if (bytes.size() < kHeaderBytes + 4) {
    throw Error(ErrorCode::kTruncated, "binary STL shorter than its 84-byte header");
  }
  const std::uint32_t count = read_u32_le(bytes.data() + kHeaderBytes);
  const std::size_t available = (bytes.size() - kHeaderBytes - 4) / kFacetBytes;
  if (count > available) {
    throw Error(ErrorCode::kTruncated, "binary STL declares " + std::to_string(count) +
                                           " triangles but only " + std::to_string(available) +
                                           " are present");
  }
  TriangleMesh mesh;
  mesh.vertices.reserve(std::size_t{count} * 3);
  mesh.triangles.reserve(count);
  const std::byte* p = bytes.data() + kHeaderBytes + 4;
  for (std::uint32_t t = 0; t < count; ++t, p += kFacetBytes) {
    // Skip the 12-byte normal; 2-byte attribute count trails the vertices.
    const std::byte* v = p + 12;
    const auto base = static_cast<std::uint32_t>(mesh.vertices.size());
    for (int k = 0; k < 3; ++k, v += 12) {
      mesh.vertices.emplace_back(read_f32_le(v), read_f32_le(v + 4), read_f32_le(v + 8));
    }
    mesh.triangles.push_back({base, base + 1, base + 2});
  }
  mesh.validate();
  return mesh;
}

class AsciiReader {
 public:
  explicit AsciiReader(std::string_view text) : text_(text) {}

  TriangleMesh parse() {
    TriangleMesh mesh;
    expect("solid");
    skip_line();
    while (true) {
      auto tok = next();
      if (!tok) fail("unexpected end of file, expected 'facet' or 'endsolid'");
      if (*tok == "endsolid") {
        skip_line();
        // Some exporters concatenate several solids.
        skip_space();
        if (pos_ >= text_.size()) break;
        expect("solid");
        skip_line();
        continue;
      }
      if (*tok != "facet") fail("expected 'facet', got '" + std::string(*tok) + "'");
      expect("normal");
      for (int i = 0; i < 3; ++i) number();
      expect("outer");
      expect("loop");
      const auto base = static_cast<std::uint32_t>(mesh.vertices.size());
      for (int k = 0; k < 3; ++k) {
        expect("vertex");
        const double x = number();
        const double y = number();
        const double z = number();
        mesh.vertices.emplace_back(x, y, z);
      }
      expect("endloop");
      expect("endfacet");
      mesh.triangles.push_back({base, base + 1, base + 2});
    }
    mesh.validate();
    return mesh;
  }

  std::size_t line() const { return line_; }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::kParse, "ASCII STL line " + std::to_string(line_) + ": " + msg);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  void skip_line() {
    while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
  }

  std::optional<std::string_view> next() {
    skip_space();
    if (pos_ >= text_.size()) return std::nullopt;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  void expect(std::string_view word) {
    auto tok = next();
    if (!tok || *tok != word) {
      fail("expected '" + std::string(word) + "', got '" + std::string(tok.value_or("<eof>")) + "'");
    }
  }

  double number() {
    auto tok = next();
    if (!tok) fail("unexpected end of file, expected a number");
    double v = 0.0;
    std::string_view s = *tok;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size()) {
      fail("malformed number '" + std::string(*tok) + "'");
    }
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

bool has_solid_prefix(std::span<const std::byte> bytes) {
  std::size_t i = 0;
  while (i < bytes.size() && std::isspace(std::to_integer<unsigned char>(bytes[i]))) ++i;
  constexpr std::string_view kSolid = "solid";
  if (bytes.size() - i < kSolid.size()) return false;
  return std::memcmp(bytes.data() + i, kSolid.data(), kSolid.size()) == 0;
}

bool binary_size_consistent(std::span<const std::byte> bytes) {
  if (bytes.size() < kHeaderBytes + 4) return false;
  const std::uint64_t count = read_u32_le(bytes.data() + kHeaderBytes);
  return kHeaderBytes + 4 + count * kFacetBytes == bytes.size();
}

}  // namespace

TriangleMesh parse_stl(std::span<const std::byte> bytes) {
  if (!has_solid_prefix(bytes)) return parse_binary(bytes);
  const std::string_view text(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  try {
    return AsciiReader(text).parse();
  } catch (const Error&) {
    // Binary files are allowed to start their header with "solid".
    if (binary_size_consistent(bytes)) return parse_binary(bytes);
    throw;
  }
}

TriangleMesh load_stl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open STL file '" + path.string() + "'");
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return parse_stl(std::as_bytes(std::span(raw)));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::vector<std::byte> write_stl(const TriangleMesh& mesh) {
  mesh.validate();
  std::vector<std::byte> out(kHeaderBytes, std::byte{0});
  constexpr std::string_view kHeader = "binary STL";
  std::memcpy(out.data(), kHeader.data(), kHeader.size());
  out.reserve(kHeaderBytes + 4 + mesh.triangles.size() * kFacetBytes);
  write_u32_le(out, static_cast<std::uint32_t>(mesh.triangles.size()));
  for (const auto& t : mesh.triangles) {
    const Vec3& a = mesh.vertices[t[0]];
    const Vec3& b = mesh.vertices[t[1]];
    const Vec3& c = mesh.vertices[t[2]];
    Vec3 n = (b - a).cross(c - a);
    if (n.norm() > 0.0) n.normalize();
    for (int i = 0; i < 3; ++i) write_f32_le(out, static_cast<float>(n[i]));
    for (const Vec3* v : {&a, &b, &c}) {
      for (int i = 0; i < 3; ++i) write_f32_le(out, static_cast<float>((*v)[i]));
    }
    out.push_back(std::byte{0});
    out.push_back(std::byte{0});
  }
  return out;
}

std::string write_stl_ascii(const TriangleMesh& mesh, const std::string& name) {
  mesh.validate();
  std::ostringstream os;
  os.precision(17);
  os << "solid " << name << "\n";
  for (const auto& t : mesh.triangles) {
    const Vec3& a = mesh.vertices[t[0]];
    const Vec3& b = mesh.vertices[t[1]];
    const Vec3& c = mesh.vertices[t[2]];
    Vec3 n = (b - a).cross(c - a);
    if (n.norm() > 0.0) n.normalize();
    os << "  facet normal " << n.x() << " " << n.y() << " " << n.z() << "\n    outer loop\n";
    for (const Vec3* v : {&a, &b, &c}) {
      os << "      vertex " << v->x() << " " << v->y() << " " << v->z() << "\n";
    }
    os << "    endloop\n  endfacet\n";
  }
  os << "endsolid " << name << "\n";
  return os.str();
}

}  // namespace vdi
