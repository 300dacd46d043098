#include "gb/depth.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace gb {

std::vector<std::uint8_t> depth_largest_component(
    const std::vector<double>& depth, int width, int height, double tau) {
  const std::size_t n = static_cast<std::size_t>(width) * height;
  if (depth.size() != n)
    throw std::invalid_argument("depth_largest_component: size mismatch");
  if (!(tau > 0.0))
    throw std::invalid_argument("depth_largest_component: tau must be > 0");
  for (double d : depth)
    if (!std::isfinite(d))
      throw std::invalid_argument("depth_largest_component: non-finite depth");

  std::vector<int> label(n, -1);
  int best_label = -1;
  std::size_t best_count = 0;
  std::size_t best_seed = 0;
  int next = 0;
  std::vector<std::size_t> stack;
  for (std::size_t seed = 0; seed < n; ++seed) {
    if (label[seed] != -1) continue;
    const int cur = next++;
    std::size_t count = 0;
    stack.push_back(seed);
    label[seed] = cur;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      ++count;
      const int x = static_cast<int>(i % width);
      const int y = static_cast<int>(i / width);
      const int nx[4] = {x - 1, x + 1, x, x};
      const int ny[4] = {y, y, y - 1, y + 1};
      for (int d = 0; d < 4; ++d) {
        if (nx[d] < 0 || ny[d] < 0 || nx[d] >= width || ny[d] >= height)
          continue;
        const std::size_t j = static_cast<std::size_t>(ny[d]) * width + nx[d];
        if (label[j] == -1 && std::abs(depth[j] - depth[i]) <= tau) {
          label[j] = cur;
          stack.push_back(j);
        }
      }
    }
    // Seeds are visited row-major, so `seed` is the component's smallest
    // top-left index; strict > implements the tie-break.
    if (count > best_count) {
      best_count = count;
      best_label = cur;
      best_seed = seed;
    }
  }
  (void)best_seed;

  std::vector<std::uint8_t> mask(n, 0);
  for (std::size_t i = 0; i < n; ++i) mask[i] = label[i] == best_label ? 1 : 0;
  return mask;
}

}  // namespace gb
