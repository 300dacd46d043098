#pragma once

#include <cstdint>
#include <vector>

#include "gb/pca.hpp"
#include "gb/types.hpp"

namespace gb {

// Uniform quantizer mapping a 3-channel color to a histogram bin.
struct ColorQuantizer {
  int bins[3] = {8, 8, 8};
  double lo[3] = {0.0, 0.0, 0.0};
  double hi[3] = {1.0, 1.0, 1.0};

  int bin_count() const { return bins[0] * bins[1] * bins[2]; }
  int bin_of(double c0, double c1, double c2) const;
};

// PCA subspace of patch color-indicator vectors (mean h0, components v_i).
struct ColorSubspace {
  Pca pca;
  int dim() const { return pca.dim(); }
  bool degenerate() const { return pca.degenerate; }
};

struct SoftSegConfig {
  int sample_count = 150;  // n_s locations on a regular grid
  int patch_radius = 2;
  int subspace_dim = 4;
  ColorQuantizer quantizer;
};

// Eight soft figure/ground layers in [0,1], plus provenance.
struct SoftSegStack {
  static constexpr int kLayers = 8;
  int width = 0;
  int height = 0;
  std::vector<double> data;  // layer-major, kLayers * width * height
  bool degenerate = false;   // constant input image
  SoftSegConfig config;

  std::size_t layer_size() const {
    return static_cast<std::size_t>(width) * height;
  }
  const double* layer(int k) const { return data.data() + k * layer_size(); }
};

// Binary indicator over color bins for the patch around `center`,
// clipped to image bounds. Image must have exactly 3 layers.
std::vector<std::uint8_t> patch_indicator(const LayerStack& image, int cx,
                                          int cy, int patch_radius,
                                          const ColorQuantizer& q);

// PCA over a set of indicator vectors. Requires >= d + 1 samples.
ColorSubspace fit_color_subspace(
    const std::vector<std::vector<std::uint8_t>>& samples, int d);

// Per-pixel figure/ground score: with a_i = (c - h0)^T v_i, the score at p
// is sum_i a_i * v_i[bin(color(p))] (the h0 term of the foreground and
// background reconstructions cancels). Positive means figure-like.
std::vector<double> figure_ground_score(const LayerStack& image,
                                        const std::vector<std::uint8_t>& c,
                                        const ColorSubspace& sub,
                                        const ColorQuantizer& q);

// Full pipeline: n_s sampled classifications compressed by PCA to 8
// soft layers, each min-max normalized to [0,1].
SoftSegStack soft_segment(const LayerStack& image, const SoftSegConfig& cfg);

LayerStack to_layer_stack(const SoftSegStack& seg);

}  // namespace gb
