#pragma once

#include <fstream>

#include "mvloc/raytrace.hpp"

namespace mvloc {

struct CloudPoint {
  Vec3 p = Vec3::Zero();
  std::array<float, 3> rgb{0.5f, 0.5f, 0.5f};
};

/// Single-plane colored point set for one pedestrian in one view: the image
/// of the detection box under the interpolated depth map.
struct CardboardCloud {
  std::optional<int> pedestrian_id;
  int camera_id = -1;
  std::vector<CloudPoint> points;
  std::optional<PedestrianAnchor> anchor;
};

constexpr std::array<float, 3> kNeutralGray{0.5f, 0.5f, 0.5f};

/// Auto stride per the box height: full resolution for small boxes, every
/// other pixel for tall ones.
inline int auto_stride(const PixelRect& rect) { return rect.n_rows <= 200 ? 1 : 2; }

inline Result<CardboardCloud> build_cardboard(const CameraModel& cam, const Detection& det,
                                              const DepthPatch& patch, int stride) {
  if (stride < 1) throw std::invalid_argument("build_cardboard: stride must be >= 1");
  const PixelRect rect = rasterize(det.box);
  if (!(rect == patch.rect)) return PipeError::dimension_mismatch;
  if (det.color_patch && (det.color_patch->n_cols != rect.n_cols || det.color_patch->n_rows != rect.n_rows))
    return PipeError::dimension_mismatch;

  const Intrinsics& k = cam.intrinsics();
  CardboardCloud cloud;
  cloud.pedestrian_id = det.pedestrian_id;
  cloud.camera_id = det.camera_id;
  cloud.points.reserve(static_cast<std::size_t>((rect.n_rows + stride - 1) / stride) *
                       ((rect.n_cols + stride - 1) / stride));
  for (int r = 0; r < rect.n_rows; r += stride) {
    const double depth = patch.at_row(r);
    const double v = rect.row0 + r;
    for (int c = 0; c < rect.n_cols; c += stride) {
      const double u = rect.col0 + c;
      const CameraPoint pc((u - k.cx) * depth / k.fx, (v - k.cy) * depth / k.fy, depth);
      CloudPoint pt;
      pt.p = cam.camera_to_world(pc);
      pt.rgb = det.color_patch ? det.color_patch->at(r, c) : kNeutralGray;
      cloud.points.push_back(pt);
    }
  }
  return cloud;
}

/// Keep round(rate * N) points, chosen uniformly without replacement.
/// Deterministic for a given seed; preserves input order.
inline CardboardCloud sample_cloud(const CardboardCloud& cloud, double rate, std::uint64_t seed) {
  if (rate < 0.0 || rate > 1.0) throw std::invalid_argument("sample_cloud: rate must be in [0,1]");
  const std::size_t n = cloud.points.size();
  const std::size_t keep = static_cast<std::size_t>(std::llround(rate * static_cast<double>(n)));
  CardboardCloud out;
  out.pedestrian_id = cloud.pedestrian_id;
  out.camera_id = cloud.camera_id;
  out.anchor = cloud.anchor;
  if (keep >= n) {
    out.points = cloud.points;
    return out;
  }
  Rng rng(seed);
  std::vector<std::uint32_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<std::uint32_t>(i);
  for (std::size_t i = 0; i < keep; ++i) {
    const std::size_t j = i + rng.uniform_index(n - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(keep);
  std::sort(idx.begin(), idx.end());
  out.points.reserve(keep);
  for (const auto i : idx) out.points.push_back(cloud.points[i]);
  return out;
}

struct GroundRect {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;
};

/// Regular grid of gray ground points over the detection area. Off by
/// default; only the ground-plane modeling ablation turns it on.
inline CardboardCloud build_ground_plane_cloud(const GroundRect& bounds, double spacing) {
  if (!(spacing > 0.0)) throw std::invalid_argument("build_ground_plane_cloud: spacing must be positive");
  const int nx = static_cast<int>(std::floor((bounds.x_max - bounds.x_min) / spacing + 1e-9)) + 1;
  const int ny = static_cast<int>(std::floor((bounds.y_max - bounds.y_min) / spacing + 1e-9)) + 1;
  CardboardCloud cloud;
  cloud.camera_id = -1;
  cloud.points.reserve(static_cast<std::size_t>(nx) * ny);
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      CloudPoint pt;
      pt.p = Vec3(bounds.x_min + i * spacing, bounds.y_min + j * spacing, 0.0);
      pt.rgb = kNeutralGray;
      cloud.points.push_back(pt);
    }
  }
  return cloud;
}

inline void write_cloud_csv(const std::vector<CardboardCloud>& clouds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write cloud CSV: " + path);
  out << "x,y,z,r,g,b\n";
  char line[160];
  for (const auto& cloud : clouds) {
    for (const auto& pt : cloud.points) {
      std::snprintf(line, sizeof(line), "%.6f,%.6f,%.6f,%.4f,%.4f,%.4f\n", pt.p.x(), pt.p.y(), pt.p.z(),
                    pt.rgb[0], pt.rgb[1], pt.rgb[2]);
      out << line;
    }
  }
}

}  // namespace mvloc
