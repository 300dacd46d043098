#pragma once

#include <vector>

#include "gb/geometry.hpp"
#include "gb/types.hpp"

namespace gb {

// Exact per-window detector. The serial variant is the reference
// implementation; the default partitions rows across OpenMP workers.
RawBoundaryMap gb1_detect(const LayerStack& stack, const GbConfig& config);
RawBoundaryMap gb1_detect_serial(const LayerStack& stack,
                                 const GbConfig& config);

// Per-layer summed-area tables over the replicate-padded stack:
// S (values), SX (x * value), SY (y * value) with absolute padded-frame
// coordinates. Tables are (w+1) x (h+1) with a zero top/left border.
struct IntegralImages {
  int width = 0;   // padded width
  int height = 0;  // padded height
  int radius = 0;
  int layers = 0;
  std::vector<double> s, sx, sy;  // layer-major tables

  std::size_t table_size() const {
    return static_cast<std::size_t>(width + 1) * (height + 1);
  }
  const double* table_s(int k) const { return s.data() + k * table_size(); }
  const double* table_sx(int k) const { return sx.data() + k * table_size(); }
  const double* table_sy(int k) const { return sy.data() + k * table_size(); }
};

IntegralImages build_integrals(const LayerStack& stack, int radius);

struct RectSums {
  double s = 0.0, sx = 0.0, sy = 0.0;
};

// Inclusive rectangle [x0..x1] x [y0..y1] in padded-frame coordinates.
// Empty rectangles (x1 < x0 or y1 < y0) yield zeros; out-of-bounds throws.
RectSums rect_sums(const IntegralImages& ii, int x0, int y0, int x1, int y1,
                   int layer);

// J for the window centered at (x, y) in *original* image coordinates,
// equal to the Gb1 fit when projection is inactive and weighting disabled.
void gb2_local_J(const IntegralImages& ii, int x, int y, int radius,
                 double alpha, std::vector<double>& jx,
                 std::vector<double>& jy);

// Linear-time detector; treats epsilon as >= r*sqrt(2) and requires
// Gaussian weighting disabled.
RawBoundaryMap gb2_detect(const LayerStack& stack, const GbConfig& config);
RawBoundaryMap gb2_detect_serial(const LayerStack& stack,
                                 const GbConfig& config);

// Runs Gb2 at each radius; strength is the weighted average, orientation
// taken per pixel from the scale with the largest strength. Weights are
// normalized internally; empty weights means equal.
RawBoundaryMap multiscale_detect(const LayerStack& stack,
                                 const std::vector<int>& radii,
                                 std::vector<double> combine_weights = {});

}  // namespace gb
