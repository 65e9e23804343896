#pragma once

#include "mvloc/detection.hpp"
#include "mvloc/geometry.hpp"

namespace mvloc {

struct Ray {
  WorldPoint origin = WorldPoint::Zero();
  Vec3 dir = Vec3::UnitZ();  // world frame, not necessarily unit length
};

/// Standing point and head of one pedestrian, recovered in world coordinates.
/// Both lie on the same vertical line; depths are camera-frame Z.
struct PedestrianAnchor {
  WorldPoint standing_world = WorldPoint::Zero();  // Z == 0
  WorldPoint head_world = WorldPoint::Zero();
  double standing_depth = 0.0;
  double head_depth = 0.0;
  double height = 0.0;
};

struct AnchorOptions {
  enum class StandingMode { keypoint, bottom_center };
  StandingMode standing_mode = StandingMode::keypoint;
  double height_min = 0.5;
  double height_max = 2.5;
};

// Back-project a pixel: origin at the camera center, direction
// R^T * [(u-cx)/fx, (v-cy)/fy, 1]. The direction's camera-frame Z is 1, so
// the ray parameter t equals camera-frame depth.
inline Ray pixel_ray(const CameraModel& cam, const PixelPoint& px) {
  const Intrinsics& k = cam.intrinsics();
  const Vec3 dir_cam((px.x() - k.cx) / k.fx, (px.y() - k.cy) / k.fy, 1.0);
  return Ray{cam.center(), cam.extrinsics().R.transpose() * dir_cam};
}

inline Result<WorldPoint> intersect_ground(const Ray& ray) {
  if (std::abs(ray.dir.z()) < 1e-12) return PipeError::ray_parallel_to_ground;
  const double t = -ray.origin.z() / ray.dir.z();
  if (!(t > 0.0)) return PipeError::intersection_behind_camera;
  WorldPoint p = ray.origin + t * ray.dir;
  p.z() = 0.0;
  return p;
}

// Solve for the point of the ray sharing the standing point's X (or Y,
// whichever direction component is larger in magnitude). The returned Z is
// the pedestrian height when the ray passes through the head.
inline Result<WorldPoint> solve_head(const Ray& ray, const WorldPoint& standing) {
  const double ax = std::abs(ray.dir.x());
  const double ay = std::abs(ray.dir.y());
  if (ax < 1e-12 && ay < 1e-12) return PipeError::degenerate_head_ray;
  const double t = (ax >= ay) ? (standing.x() - ray.origin.x()) / ray.dir.x()
                              : (standing.y() - ray.origin.y()) / ray.dir.y();
  if (!(t > 0.0)) return PipeError::intersection_behind_camera;
  const WorldPoint head = ray.origin + t * ray.dir;
  if (!(head.z() > 0.0)) return PipeError::negative_height;
  return head;
}

/// Pixel column at which the vertical world line through `ground` crosses
/// image row `v`. Used to aim the head ray: casting through the standing
/// point's own column is only exact for untilted cameras, while the
/// crossing column keeps the head solve exact for any pose.
inline Result<double> vertical_line_column_at_row(const CameraModel& cam, const WorldPoint& ground, double v) {
  const Intrinsics& k = cam.intrinsics();
  const CameraPoint base = cam.world_to_camera(WorldPoint(ground.x(), ground.y(), 0.0));
  const Vec3 up_cam = cam.extrinsics().R.col(2);  // camera-frame image of world +Z
  const double dv = v - k.cy;
  const double denom = dv * up_cam.z() - k.fy * up_cam.y();
  if (std::abs(denom) < 1e-12 * k.fy) return PipeError::degenerate_head_ray;
  const double z = (k.fy * base.y() - dv * base.z()) / denom;
  const double depth = base.z() + z * up_cam.z();
  if (!(depth > 0.0)) return PipeError::point_behind_camera;
  return k.cx + k.fx * (base.x() + z * up_cam.x()) / depth;
}

inline Result<PedestrianAnchor> anchor_from_detection(const CameraModel& cam, const Detection& det,
                                                      const AnchorOptions& opts = {}) {
  PixelPoint standing_px = det.standing_px;
  if (opts.standing_mode == AnchorOptions::StandingMode::bottom_center)
    standing_px = PixelPoint(0.5 * (det.box.u_min + det.box.u_max), det.box.v_max);
  if (!cam.contains(standing_px) || det.box.v_min < 0.0) return PipeError::standing_point_outside_image;

  const Result<WorldPoint> standing = intersect_ground(pixel_ray(cam, standing_px));
  if (!standing) return standing.error();

  const Result<double> head_u = vertical_line_column_at_row(cam, *standing, det.box.v_min);
  if (!head_u) return head_u.error();
  const Result<WorldPoint> head_raw = solve_head(pixel_ray(cam, PixelPoint(*head_u, det.box.v_min)), *standing);
  if (!head_raw) return head_raw.error();

  PedestrianAnchor anchor;
  anchor.standing_world = *standing;
  anchor.height = head_raw->z();
  anchor.head_world = WorldPoint(standing->x(), standing->y(), anchor.height);
  if (anchor.height < opts.height_min || anchor.height > opts.height_max) return PipeError::implausible_height;
  anchor.standing_depth = cam.world_to_camera(anchor.standing_world).z();
  anchor.head_depth = cam.world_to_camera(anchor.head_world).z();
  if (!(anchor.standing_depth > 0.0) || !(anchor.head_depth > 0.0)) return PipeError::point_behind_camera;
  return anchor;
}

/// Row-constant depth over a box: the top row carries the head depth, the
/// bottom row the standing depth, rows between are linearly interpolated.
struct DepthPatch {
  PixelRect rect;
  std::vector<double> row_depth;  // size == rect.n_rows

  double at_row(int row) const { return row_depth[static_cast<std::size_t>(row)]; }
};

inline Result<DepthPatch> interpolate_box_depth(const PedestrianAnchor& anchor, const BBox& box) {
  const PixelRect rect = rasterize(box);
  if (rect.n_rows < 2 || rect.n_cols < 1) return PipeError::degenerate_box;
  DepthPatch patch;
  patch.rect = rect;
  patch.row_depth.resize(rect.n_rows);
  const double span = static_cast<double>(rect.n_rows - 1);
  for (int r = 0; r < rect.n_rows; ++r) {
    const double f = static_cast<double>(r) / span;
    patch.row_depth[r] = anchor.head_depth + (anchor.standing_depth - anchor.head_depth) * f;
  }
  return patch;
}

}  // namespace mvloc
