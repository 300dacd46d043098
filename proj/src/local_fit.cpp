#include "gb/local_fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gb {

Eigen2x2 eigen2x2_sym(double a, double b, double c) {
  Eigen2x2 out;
  const double half_trace = 0.5 * (a + c);
  const double half_diff = 0.5 * (a - c);
  const double disc = std::sqrt(half_diff * half_diff + b * b);
  out.lambda_max = half_trace + disc;
  out.lambda_min = half_trace - disc;

  const double gap = out.lambda_max - out.lambda_min;
  if (gap <= 1e-12 * std::max(out.lambda_max, 1.0)) {
    out.degenerate = true;
    out.vx = 1.0;
    out.vy = 0.0;
    return out;
  }

  // Pick the better-conditioned of the two eigenvector expressions.
  double vx1 = b, vy1 = out.lambda_max - a;
  double vx2 = out.lambda_max - c, vy2 = b;
  double n1 = vx1 * vx1 + vy1 * vy1;
  double n2 = vx2 * vx2 + vy2 * vy2;
  double vx = vx1, vy = vy1, n = n1;
  if (n2 > n1) {
    vx = vx2;
    vy = vy2;
    n = n2;
  }
  const double inv = 1.0 / std::sqrt(n);
  out.vx = vx * inv;
  out.vy = vy * inv;
  return out;
}

double LocalFit::strength() const { return std::sqrt(std::max(lambda, 0.0)); }

LocalFit local_fit(const std::vector<double>& window_samples, int layer_count,
                   const PositionBasis& basis) {
  const std::size_t n = basis.size();
  if (layer_count < 1 || window_samples.size() != n * layer_count)
    throw std::invalid_argument("local_fit: sample matrix size mismatch");

  LocalFit fit;
  fit.jx.assign(layer_count, 0.0);
  fit.jy.assign(layer_count, 0.0);
  const double inv_alpha = 1.0 / basis.alpha;
  for (std::size_t i = 0; i < n; ++i) {
    const double cx = basis.px[i] * inv_alpha;
    const double cy = basis.py[i] * inv_alpha;
    const double* row = window_samples.data() + i * layer_count;
    for (int k = 0; k < layer_count; ++k) {
      fit.jx[k] += cx * row[k];
      fit.jy[k] += cy * row[k];
    }
  }
  for (int k = 0; k < layer_count; ++k) {
    fit.m00 += fit.jx[k] * fit.jx[k];
    fit.m01 += fit.jx[k] * fit.jy[k];
    fit.m11 += fit.jy[k] * fit.jy[k];
  }
  const Eigen2x2 eig = eigen2x2_sym(fit.m00, fit.m01, fit.m11);
  fit.lambda = std::max(eig.lambda_max, 0.0);
  fit.vx = eig.vx;
  fit.vy = eig.vy;
  fit.degenerate = eig.degenerate;
  return fit;
}

}  // namespace gb
