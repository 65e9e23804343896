#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

namespace mvloc {

// World frame is Z-up with the ground plane at Z = 0.
// Camera frame: X right, Y down, Z forward (optical axis).
using WorldPoint = Eigen::Vector3d;
using CameraPoint = Eigen::Vector3d;
using PixelPoint = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Rgb = Eigen::Vector3d;

// Per-detection failure categories. These are surfaced (and counted by the
// pipeline) rather than thrown: a bad detection is data, not a bug.
enum class PipeError {
  none,
  point_behind_camera,
  ray_parallel_to_ground,
  intersection_behind_camera,
  degenerate_head_ray,
  negative_height,
  implausible_height,
  standing_point_outside_image,
  degenerate_box,
  dimension_mismatch,
};

inline const char* to_string(PipeError e) {
  switch (e) {
    case PipeError::none: return "none";
    case PipeError::point_behind_camera: return "point_behind_camera";
    case PipeError::ray_parallel_to_ground: return "ray_parallel_to_ground";
    case PipeError::intersection_behind_camera: return "intersection_behind_camera";
    case PipeError::degenerate_head_ray: return "degenerate_head_ray";
    case PipeError::negative_height: return "negative_height";
    case PipeError::implausible_height: return "implausible_height";
    case PipeError::standing_point_outside_image: return "standing_point_outside_image";
    case PipeError::degenerate_box: return "degenerate_box";
    case PipeError::dimension_mismatch: return "dimension_mismatch";
  }
  return "unknown";
}

/// Value-or-error result for operations that can fail per detection.
template <typename T>
class Result {
 public:
  Result(T value) : value_(std::move(value)) {}
  Result(PipeError err) : err_(err) {
    if (err == PipeError::none) throw std::logic_error("Result: error must not be none");
  }

  bool ok() const { return value_.has_value(); }
  explicit operator bool() const { return ok(); }
  PipeError error() const { return err_; }

  const T& operator*() const { return value_.value(); }
  const T* operator->() const { return &value_.value(); }
  const T& value() const { return value_.value(); }

 private:
  std::optional<T> value_;
  PipeError err_ = PipeError::none;
};

/// Deterministic RNG with explicit float mapping; std::distributions are
/// implementation-defined, which would break byte-identical reruns across
/// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : base_seed_(seed), state_(seed) {}

  std::uint64_t next_u64() { return state_(); }

  // Uniform in (0, 1], 53-bit resolution.
  double uniform() { return static_cast<double>((state_() >> 11) + 1) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
    return std::min<std::uint64_t>(static_cast<std::uint64_t>(uniform() * static_cast<double>(n)), n - 1);
  }

  double normal(double mean, double sigma) {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + sigma * r * std::cos(2.0 * M_PI * u2);
  }

  // Knuth sampler; fine for the small rates used here.
  int poisson(double lambda) {
    if (lambda <= 0.0) return 0;
    const double limit = std::exp(-lambda);
    int k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform();
    } while (p > limit);
    return k - 1;
  }

  /// Independent child stream (e.g. one per camera) so that per-stream
  /// consumption order cannot leak across streams.
  Rng stream(std::uint64_t index) const {
    return Rng(seed_mix(base_seed_, index));
  }

  static std::uint64_t seed_mix(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
  }

 private:
  std::uint64_t base_seed_;
  std::mt19937_64 state_;
};

}  // namespace mvloc
