#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gb {

// Stack of K interpretation layers over an N_x x N_y grid.
// Storage is layer-major, then row-major: index = (k*height + y)*width + x.
struct LayerStack {
  int width = 0;
  int height = 0;
  std::vector<std::string> names;  // one tag per layer
  std::vector<double> gamma;       // per-layer scale, applied before detection
  std::vector<double> data;

  LayerStack() = default;
  LayerStack(int w, int h, int layers);

  int layer_count() const { return static_cast<int>(gamma.size()); }
  std::size_t layer_size() const {
    return static_cast<std::size_t>(width) * height;
  }
  double* layer(int k) { return data.data() + k * layer_size(); }
  const double* layer(int k) const { return data.data() + k * layer_size(); }
  double& at(int k, int x, int y) {
    return data[(static_cast<std::size_t>(k) * height + y) * width + x];
  }
  double at(int k, int x, int y) const {
    return data[(static_cast<std::size_t>(k) * height + y) * width + x];
  }

  // Throws std::invalid_argument on dimension mismatch, non-positive gamma
  // or non-finite values.
  void validate() const;
};

// Copy with gamma applied to the data and reset to 1.
LayerStack apply_scales(const LayerStack& stack);

// Replicate-pad every layer by r pixels on each side.
LayerStack pad_replicate(const LayerStack& stack, int r);

// Detector configuration. The per-window constant term of the boundary
// model cancels analytically and is never materialized.
struct GbConfig {
  int window_radius = 3;
  double epsilon = 1.5;             // disk radius; default r/2
  bool use_gaussian_weights = false;  // sigma = r/2, centered on the window

  static GbConfig with_radius(int r, bool gaussian = false) {
    return GbConfig{r, r / 2.0, gaussian};
  }
};

// Per-pixel boundary strength ||b|| = sqrt(lambda) and normal angle
// theta in [0, pi), before logistic calibration.
struct RawBoundaryMap {
  int width = 0;
  int height = 0;
  std::vector<double> strength;
  std::vector<double> orientation;
  std::vector<std::uint8_t> degenerate;  // isotropic M

  RawBoundaryMap() = default;
  RawBoundaryMap(int w, int h)
      : width(w),
        height(h),
        strength(static_cast<std::size_t>(w) * h, 0.0),
        orientation(static_cast<std::size_t>(w) * h, 0.0),
        degenerate(static_cast<std::size_t>(w) * h, 0) {}

  std::size_t size() const { return strength.size(); }
};

}  // namespace gb
