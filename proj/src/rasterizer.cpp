#include "vdi/rasterizer.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>
#include <tuple>
#include <vector>

#include "vdi/error.hpp"

namespace vdi {
namespace {

struct ScreenVertex {
  double x;
  double y;
  double inv_w;  // 1 / camera-frame Z
};

struct Edge {
  // Canonical endpoints (lexicographically ordered) so that two triangles
  // sharing an edge evaluate bitwise-opposite edge functions.
  double ax, ay, bx, by;
  double sign;
  bool include_ties;

  double eval(double px, double py) const { return sign * ((bx - ax) * (py - ay) - (by - ay) * (px - ax)); }
};

struct ScreenTriangle {
  std::array<Edge, 3> edges;  // edge i is opposite vertex i
  std::array<double, 3> inv_w;
  double area;
  int min_x, max_x, min_y, max_y;
};

double edge_function(const ScreenVertex& a, const ScreenVertex& b, double px, double py) {
  return (b.x - a.x) * (py - a.y) - (b.y - a.y) * (px - a.x);
}

Edge make_edge(const ScreenVertex& from, const ScreenVertex& to) {
  Edge e{};
  const bool swap = std::tie(to.x, to.y) < std::tie(from.x, from.y);
  const ScreenVertex& a = swap ? to : from;
  const ScreenVertex& b = swap ? from : to;
  e.ax = a.x;
  e.ay = a.y;
  e.bx = b.x;
  e.by = b.y;
  e.sign = swap ? -1.0 : 1.0;
  // Interior lies where the edge function is positive; its gradient is
  // (-dy, dx). Left edges have interior towards +x, top edges (horizontal)
  // towards +y in the y-down image.
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  e.include_ties = (-dy > 0.0) || (dy == 0.0 && dx > 0.0);
  return e;
}

using ClipVertex = Eigen::Vector4d;

// Signed distance to the near plane in clip space (z_clip + w_clip >= 0).
double near_distance(const ClipVertex& v) { return v.z() + v.w(); }

// Sutherland-Hodgman against the near plane. At most one extra vertex.
int clip_near(const std::array<ClipVertex, 3>& in, std::array<ClipVertex, 4>& out) {
  int n = 0;
  for (int i = 0; i < 3; ++i) {
    const ClipVertex& a = in[i];
    const ClipVertex& b = in[(i + 1) % 3];
    const double da = near_distance(a);
    const double db = near_distance(b);
    if (da >= 0.0) out[n++] = a;
    if ((da >= 0.0) != (db >= 0.0)) {
      // Always interpolate from the inside vertex so neighbours sharing this
      // edge produce the same point.
      const ClipVertex& inside = da >= 0.0 ? a : b;
      const ClipVertex& outside = da >= 0.0 ? b : a;
      const double di = std::max(da, db);
      const double dout = std::min(da, db);
      const double t = di / (di - dout);
      out[n++] = inside + t * (outside - inside);
    }
  }
  return n;
}

class TriangleSetup {
 public:
  TriangleSetup(const CameraModel& cam) : cam_(cam) {}

  void add_mesh(const TriangleMesh& mesh, const RigidTransform& pose) {
    const Eigen::Matrix4d mvp = mvp_matrix(cam_, pose);
    clip_.resize(mesh.vertices.size());
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
      clip_[i] = mvp * mesh.vertices[i].homogeneous();
    }
    for (const auto& t : mesh.triangles) {
      const std::array<ClipVertex, 3> tri{clip_[t[0]], clip_[t[1]], clip_[t[2]]};
      if (tri[0].w() > cam_.far_plane && tri[1].w() > cam_.far_plane && tri[2].w() > cam_.far_plane) continue;
      std::array<ClipVertex, 4> poly;
      const int n = clip_near(tri, poly);
      if (n < 3) continue;
      std::array<ScreenVertex, 4> sv;
      for (int i = 0; i < n; ++i) {
        const double iw = 1.0 / poly[i].w();
        sv[i] = {poly[i].x() * iw, poly[i].y() * iw, iw};
      }
      add_triangle(sv[0], sv[1], sv[2]);
      if (n == 4) add_triangle(sv[0], sv[2], sv[3]);
    }
  }

  std::vector<ScreenTriangle>& triangles() { return tris_; }

 private:
  void add_triangle(ScreenVertex a, ScreenVertex b, ScreenVertex c) {
    double area = edge_function(a, b, c.x, c.y);
    if (area < 0.0) {
      std::swap(b, c);
      area = -area;
    }
    if (!(area > 0.0) || !std::isfinite(area)) return;  // degenerate
    const double lo_x = std::min({a.x, b.x, c.x});
    const double hi_x = std::max({a.x, b.x, c.x});
    const double lo_y = std::min({a.y, b.y, c.y});
    const double hi_y = std::max({a.y, b.y, c.y});
    if (hi_x < 0.0 || hi_y < 0.0 || lo_x > cam_.width - 1 || lo_y > cam_.height - 1) return;
    ScreenTriangle t;
    t.min_x = static_cast<int>(std::max(0.0, std::ceil(lo_x)));
    t.max_x = static_cast<int>(std::min<double>(cam_.width - 1, std::floor(hi_x)));
    t.min_y = static_cast<int>(std::max(0.0, std::ceil(lo_y)));
    t.max_y = static_cast<int>(std::min<double>(cam_.height - 1, std::floor(hi_y)));
    if (t.min_x > t.max_x || t.min_y > t.max_y) return;
    t.edges = {make_edge(b, c), make_edge(c, a), make_edge(a, b)};
    t.inv_w = {a.inv_w, b.inv_w, c.inv_w};
    t.area = area;
    tris_.push_back(t);
  }

  const CameraModel& cam_;
  std::vector<ClipVertex> clip_;
  std::vector<ScreenTriangle> tris_;
};

// Nearest float inside [near, far]; guards against the float conversion
// stepping just outside the range.
float store_depth(double z, double near_plane, double far_plane) {
  float f = static_cast<float>(std::max(z, near_plane));
  if (f < near_plane) f = std::nextafter(f, std::numeric_limits<float>::infinity());
  if (f > far_plane) f = std::nextafter(f, 0.0f);
  return f;
}

void raster_tile(const std::vector<ScreenTriangle>& tris, const std::vector<std::uint32_t>& bin, int x0, int y0,
                 int x1, int y1, const CameraModel& cam, DepthImage& out) {
  for (std::uint32_t idx : bin) {
    const ScreenTriangle& t = tris[idx];
    const int sx = std::max(x0, t.min_x), ex = std::min(x1, t.max_x);
    const int sy = std::max(y0, t.min_y), ey = std::min(y1, t.max_y);
    for (int y = sy; y <= ey; ++y) {
      const double py = y;
      for (int x = sx; x <= ex; ++x) {
        const double px = x;
        double e[3];
        bool inside = true;
        for (int k = 0; k < 3 && inside; ++k) {
          e[k] = t.edges[k].eval(px, py);
          inside = e[k] > 0.0 || (e[k] == 0.0 && t.edges[k].include_ties);
        }
        if (!inside) continue;
        const double inv_z = e[0] * t.inv_w[0] + e[1] * t.inv_w[1] + e[2] * t.inv_w[2];
        if (!(inv_z > 0.0)) continue;
        const double z = t.area / inv_z;
        if (z > cam.far_plane) continue;
        const float d = store_depth(z, cam.near_plane, cam.far_plane);
        float& dst = out.at(x, y);
        if (dst == DepthImage::kInvalid || d < dst) dst = d;
      }
    }
  }
}

}  // namespace

Eigen::Matrix4d projection_matrix(const CameraModel& cam) {
  const double n = cam.near_plane;
  const double f = cam.far_plane;
  Eigen::Matrix4d p = Eigen::Matrix4d::Zero();
  p(0, 0) = cam.fx;
  p(0, 2) = cam.cx;
  p(1, 1) = cam.fy;
  p(1, 2) = cam.cy;
  p(2, 2) = (f + n) / (f - n);
  p(2, 3) = -2.0 * f * n / (f - n);
  p(3, 2) = 1.0;
  return p;
}

Eigen::Matrix4d mvp_matrix(const CameraModel& cam, const RigidTransform& model_to_world) {
  return projection_matrix(cam) * cam.world_to_camera.isometry().matrix() * model_to_world.isometry().matrix();
}

DepthImage render_vdi(std::span<const PosedMesh> meshes, const CameraModel& cam, const RenderOptions& options) {
  cam.validate();
  if (options.tile_size <= 0) throw Error(ErrorCode::kInvalidArgument, "tile size must be positive");
  DepthImage out(cam.width, cam.height);

  TriangleSetup setup(cam);
  for (const auto& pm : meshes) {
    if (pm.mesh != nullptr) setup.add_mesh(*pm.mesh, pm.pose);
  }
  const auto& tris = setup.triangles();
  if (tris.empty()) return out;

  const int ts = options.tile_size;
  const int tiles_x = (cam.width + ts - 1) / ts;
  const int tiles_y = (cam.height + ts - 1) / ts;
  std::vector<std::vector<std::uint32_t>> bins(static_cast<std::size_t>(tiles_x) * tiles_y);
  for (std::uint32_t i = 0; i < tris.size(); ++i) {
    const auto& t = tris[i];
    for (int ty = t.min_y / ts; ty <= t.max_y / ts; ++ty) {
      for (int tx = t.min_x / ts; tx <= t.max_x / ts; ++tx) bins[static_cast<std::size_t>(ty) * tiles_x + tx].push_back(i);
    }
  }

  // Each tile has exactly one writer.
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t tile = next++; tile < bins.size(); tile = next++) {
      if (bins[tile].empty()) continue;
      const int tx = static_cast<int>(tile % tiles_x);
      const int ty = static_cast<int>(tile / tiles_x);
      const int x0 = tx * ts, y0 = ty * ts;
      raster_tile(tris, bins[tile], x0, y0, std::min(x0 + ts, cam.width) - 1, std::min(y0 + ts, cam.height) - 1, cam,
                  out);
    }
  };
  unsigned threads = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(bins.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads - 1);
    for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
  }
  return out;
}

DepthImage render_frame(const RobotModel& model, const JointState& q, const CameraModel& cam,
                        const RenderOptions& options) {
  const FkResult fk = forward_kinematics(model, q);
  const auto meshes = posed_meshes(model, fk.poses);
  return render_vdi(meshes, cam, options);
}

}  // namespace vdi
