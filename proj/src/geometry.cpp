#include "gb/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace gb {

std::pair<double, double> project_to_disk(double ox, double oy, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("project_to_disk: eps <= 0");
  const double norm = std::hypot(ox, oy);
  if (norm <= eps) return {ox, oy};
  const double s = eps / norm;
  return {ox * s, oy * s};
}

PositionBasis build_position_basis(int radius, double epsilon,
                                   bool use_gaussian) {
  if (radius < 1)
    throw std::invalid_argument("build_position_basis: radius < 1");
  if (!(epsilon > 0.0))
    throw std::invalid_argument("build_position_basis: epsilon <= 0");

  PositionBasis basis;
  basis.radius = radius;
  basis.epsilon = epsilon;
  basis.gaussian = use_gaussian;
  const int side = 2 * radius + 1;
  basis.dx.reserve(side * side);
  basis.dy.reserve(side * side);
  basis.px.reserve(side * side);
  basis.py.reserve(side * side);
  basis.weights.reserve(side * side);

  const double sigma = radius / 2.0;
  const double inv_two_sigma2 = 1.0 / (2.0 * sigma * sigma);

  double alpha = 0.0;
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      auto [qx, qy] = project_to_disk(dx, dy, epsilon);
      double w = 1.0;
      if (use_gaussian)
        w = std::exp(-(dx * dx + dy * dy) * inv_two_sigma2);
      basis.dx.push_back(dx);
      basis.dy.push_back(dy);
      basis.px.push_back(w * qx);
      basis.py.push_back(w * qy);
      basis.weights.push_back(w);
      alpha += (w * qx) * (w * qx);
    }
  }
  basis.alpha = alpha;
  return basis;
}

}  // namespace gb
