#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mvloc/core.hpp"

namespace mvloc {

struct Intrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;

  void validate() const {
    if (!(fx > 0.0) || !(fy > 0.0)) throw std::invalid_argument("Intrinsics: focal lengths must be positive");
  }
};

// p_cam = R * p_world + T.
struct Extrinsics {
  Mat3 R = Mat3::Identity();
  Vec3 T = Vec3::Zero();

  void validate() const {
    const Mat3 residual = R.transpose() * R - Mat3::Identity();
    if (residual.cwiseAbs().maxCoeff() > 1e-9) throw std::invalid_argument("Extrinsics: R is not orthonormal");
    if (std::abs(R.determinant() - 1.0) > 1e-9) throw std::invalid_argument("Extrinsics: det(R) != +1");
  }
};

inline WorldPoint camera_center(const Extrinsics& ext) {
  return -(ext.R.transpose() * ext.T);
}

class CameraModel {
 public:
  CameraModel(int id, Intrinsics intr, Extrinsics ext, int width, int height)
      : id_(id), intr_(intr), ext_(ext), width_(width), height_(height), center_(mvloc::camera_center(ext)) {
    intr_.validate();
    ext_.validate();
    if (width_ <= 0 || height_ <= 0) throw std::invalid_argument("CameraModel: image size must be positive");
    if (!(center_.z() > 0.0)) throw std::invalid_argument("CameraModel: camera center must be above the ground plane");
  }

  int id() const { return id_; }
  int width() const { return width_; }
  int height() const { return height_; }
  const Intrinsics& intrinsics() const { return intr_; }
  const Extrinsics& extrinsics() const { return ext_; }
  const WorldPoint& center() const { return center_; }

  CameraPoint world_to_camera(const WorldPoint& p) const { return ext_.R * p + ext_.T; }

  WorldPoint camera_to_world(const CameraPoint& p) const { return ext_.R.transpose() * (p - ext_.T); }

  Result<PixelPoint> project(const WorldPoint& p) const {
    const CameraPoint c = world_to_camera(p);
    if (!(c.z() > 0.0)) return PipeError::point_behind_camera;
    return PixelPoint(intr_.fx * c.x() / c.z() + intr_.cx, intr_.fy * c.y() / c.z() + intr_.cy);
  }

  bool contains(const PixelPoint& px) const {
    return px.x() >= 0.0 && px.x() < width_ && px.y() >= 0.0 && px.y() < height_;
  }

 private:
  int id_;
  Intrinsics intr_;
  Extrinsics ext_;
  int width_;
  int height_;
  WorldPoint center_;
};

inline nlohmann::json camera_to_json(const CameraModel& cam) {
  nlohmann::json j;
  j["id"] = cam.id();
  j["width"] = cam.width();
  j["height"] = cam.height();
  j["fx"] = cam.intrinsics().fx;
  j["fy"] = cam.intrinsics().fy;
  j["cx"] = cam.intrinsics().cx;
  j["cy"] = cam.intrinsics().cy;
  std::vector<double> r(9);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) r[3 * i + k] = cam.extrinsics().R(i, k);
  j["R"] = r;
  j["T"] = std::vector<double>{cam.extrinsics().T.x(), cam.extrinsics().T.y(), cam.extrinsics().T.z()};
  return j;
}

inline CameraModel camera_from_json(const nlohmann::json& j) {
  Intrinsics intr{j.at("fx").get<double>(), j.at("fy").get<double>(), j.at("cx").get<double>(),
                  j.at("cy").get<double>()};
  const auto r = j.at("R").get<std::vector<double>>();
  const auto t = j.at("T").get<std::vector<double>>();
  if (r.size() != 9 || t.size() != 3) throw std::runtime_error("calibration: R must have 9 entries and T 3");
  Extrinsics ext;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) ext.R(i, k) = r[3 * i + k];
  ext.T = Vec3(t[0], t[1], t[2]);
  return CameraModel(j.at("id").get<int>(), intr, ext, j.at("width").get<int>(), j.at("height").get<int>());
}

inline std::vector<CameraModel> load_calibration(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open calibration file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed calibration JSON (" + path + "): " + e.what());
  }
  std::vector<CameraModel> cams;
  for (const auto& entry : j) cams.push_back(camera_from_json(entry));
  return cams;
}

inline void save_calibration(const std::vector<CameraModel>& cams, const std::string& path) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& cam : cams) j.push_back(camera_to_json(cam));
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write calibration file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace mvloc
