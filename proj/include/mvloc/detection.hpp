#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "mvloc/core.hpp"

namespace mvloc {

struct BBox {
  double u_min = 0.0;
  double v_min = 0.0;
  double u_max = 0.0;
  double v_max = 0.0;

  double width() const { return u_max - u_min; }
  double height() const { return v_max - v_min; }
  bool well_ordered() const { return u_min < u_max && v_min < v_max; }
};

// Integer pixel lattice covering a box: columns [col0, col0 + n_cols),
// rows [row0, row0 + n_rows).
struct PixelRect {
  int col0 = 0;
  int row0 = 0;
  int n_cols = 0;
  int n_rows = 0;

  bool operator==(const PixelRect&) const = default;
};

inline PixelRect rasterize(const BBox& box) {
  PixelRect r;
  r.col0 = static_cast<int>(std::floor(box.u_min));
  r.row0 = static_cast<int>(std::floor(box.v_min));
  r.n_cols = std::max(0, static_cast<int>(std::ceil(box.u_max)) - r.col0);
  r.n_rows = std::max(0, static_cast<int>(std::ceil(box.v_max)) - r.row0);
  return r;
}

/// Per-pixel RGB values (in [0,1]) over a box rasterization, row-major.
struct ColorPatch {
  int n_cols = 0;
  int n_rows = 0;
  std::vector<std::array<float, 3>> px;

  static ColorPatch flat(int n_cols, int n_rows, const Rgb& color) {
    ColorPatch p;
    p.n_cols = n_cols;
    p.n_rows = n_rows;
    p.px.assign(static_cast<std::size_t>(n_cols) * n_rows,
                {static_cast<float>(color.x()), static_cast<float>(color.y()), static_cast<float>(color.z())});
    return p;
  }

  const std::array<float, 3>& at(int row, int col) const {
    return px[static_cast<std::size_t>(row) * n_cols + col];
  }
};

struct Detection {
  int camera_id = -1;
  BBox box;
  PixelPoint standing_px = PixelPoint::Zero();
  std::optional<ColorPatch> color_patch;
  double confidence = 1.0;
  // Ground-truth identity, known only for simulator-rendered detections.
  std::optional<int> pedestrian_id;

  // Vertical slack for the standing point as a fraction of box height; feet
  // keypoints can land slightly past the box edge on loose boxes.
  static constexpr double kStandingSlack = 0.5;

  bool valid() const {
    if (!box.well_ordered()) return false;
    const double slack = kStandingSlack * box.height();
    return standing_px.x() >= box.u_min && standing_px.x() <= box.u_max &&
           standing_px.y() >= box.v_min - slack && standing_px.y() <= box.v_max + slack;
  }
};

}  // namespace mvloc
