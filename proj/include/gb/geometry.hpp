#pragma once

#include <utility>
#include <vector>

namespace gb {

// Window geometry for the local boundary fit. Offsets are the
// (2r+1)^2 relative positions, projected onto the epsilon-disk and
// multiplied row-wise by the Gaussian weight w_i (1 when disabled).
// P^T P = alpha * I holds by symmetry of the square window.
struct PositionBasis {
  int radius = 0;
  double epsilon = 0.0;
  bool gaussian = false;
  std::vector<int> dx, dy;      // integer offsets, row-major over the window
  std::vector<double> px, py;   // weighted projected offsets w_i * (p_hat - p0)
  std::vector<double> weights;  // w_i
  double alpha = 0.0;           // sum of (w_i * projected x_i)^2

  std::size_t size() const { return px.size(); }
};

// Closest point to `offset` on the disk of radius eps centered at the origin.
std::pair<double, double> project_to_disk(double ox, double oy, double eps);

PositionBasis build_position_basis(int radius, double epsilon,
                                   bool use_gaussian);

}  // namespace gb
