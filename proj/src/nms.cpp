#include "gb/nms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gb/threads.hpp"

namespace gb {

namespace {

double bilinear(const std::vector<double>& map, int w, int h, double x,
                double y) {
  x = std::clamp(x, 0.0, static_cast<double>(w - 1));
  y = std::clamp(y, 0.0, static_cast<double>(h - 1));
  const int x0 = static_cast<int>(x);
  const int y0 = static_cast<int>(y);
  const int x1 = std::min(x0 + 1, w - 1);
  const int y1 = std::min(y0 + 1, h - 1);
  const double fx = x - x0, fy = y - y0;
  const double top = map[y0 * w + x0] * (1 - fx) + map[y0 * w + x1] * fx;
  const double bot = map[y1 * w + x0] * (1 - fx) + map[y1 * w + x1] * fx;
  return top * (1 - fy) + bot * fy;
}

}  // namespace

std::vector<double> nms(const std::vector<double>& strength,
                        const RawBoundaryMap& map) {
  const int w = map.width, h = map.height;
  if (strength.size() != map.size())
    throw std::invalid_argument("nms: strength size mismatch");
  std::vector<double> out(strength.size(), 0.0);
#pragma omp parallel for schedule(static) num_threads(worker_count())
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      const double s = strength[i];
      bool keep;
      if (map.degenerate[i]) {
        keep = true;
        for (int dy = -1; dy <= 1 && keep; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = std::clamp(x + dx, 0, w - 1);
            const int ny = std::clamp(y + dy, 0, h - 1);
            if (strength[ny * w + nx] > s) {
              keep = false;
              break;
            }
          }
      } else {
        const double nx = std::cos(map.orientation[i]);
        const double ny = std::sin(map.orientation[i]);
        keep = s >= bilinear(strength, w, h, x + nx, y + ny) &&
               s >= bilinear(strength, w, h, x - nx, y - ny);
      }
      if (keep) out[i] = s;
    }
  }
  return out;
}

std::vector<double> nms(const RawBoundaryMap& map) {
  return nms(map.strength, map);
}

}  // namespace gb
