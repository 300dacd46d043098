#include "gb/types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gb {

LayerStack::LayerStack(int w, int h, int layers)
    : width(w),
      height(h),
      names(layers),
      gamma(layers, 1.0),
      data(static_cast<std::size_t>(w) * h * layers, 0.0) {}

void LayerStack::validate() const {
  if (width <= 0 || height <= 0 || layer_count() <= 0)
    throw std::invalid_argument("layer stack: empty dimensions");
  if (names.size() != gamma.size())
    throw std::invalid_argument("layer stack: name/gamma count mismatch");
  if (data.size() != layer_size() * layer_count())
    throw std::invalid_argument("layer stack: payload size mismatch");
  for (double g : gamma)
    if (!(g > 0.0) || !std::isfinite(g))
      throw std::invalid_argument("layer stack: gamma must be positive");
  for (double v : data)
    if (!std::isfinite(v))
      throw std::invalid_argument("layer stack: non-finite value");
}

LayerStack apply_scales(const LayerStack& stack) {
  LayerStack out = stack;
  for (int k = 0; k < out.layer_count(); ++k) {
    const double g = out.gamma[k];
    if (g != 1.0) {
      double* p = out.layer(k);
      for (std::size_t i = 0; i < out.layer_size(); ++i) p[i] *= g;
    }
    out.gamma[k] = 1.0;
  }
  return out;
}

LayerStack pad_replicate(const LayerStack& stack, int r) {
  if (r < 0) throw std::invalid_argument("pad_replicate: negative radius");
  const int w = stack.width, h = stack.height;
  LayerStack out(w + 2 * r, h + 2 * r, stack.layer_count());
  out.names = stack.names;
  out.gamma = stack.gamma;
  for (int k = 0; k < stack.layer_count(); ++k) {
    for (int y = 0; y < out.height; ++y) {
      const int sy = std::clamp(y - r, 0, h - 1);
      for (int x = 0; x < out.width; ++x) {
        const int sx = std::clamp(x - r, 0, w - 1);
        out.at(k, x, y) = stack.at(k, sx, sy);
      }
    }
  }
  return out;
}

}  // namespace gb
