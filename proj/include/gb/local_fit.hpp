#pragma once

#include <vector>

#include "gb/geometry.hpp"

namespace gb {

struct Eigen2x2 {
  double lambda_max = 0.0;
  double lambda_min = 0.0;
  double vx = 1.0;  // unit eigenvector of lambda_max; (1,0) when degenerate
  double vy = 0.0;
  bool degenerate = false;
};

// Principal eigenpair of the symmetric matrix [[a, b], [b, c]].
// Degenerate when the eigenvalue gap is below 1e-12 * max(lambda_max, 1).
Eigen2x2 eigen2x2_sym(double a, double b, double c);

struct LocalFit {
  std::vector<double> jx, jy;  // rows of the 2 x K matrix J
  double m00 = 0.0, m01 = 0.0, m11 = 0.0;  // M = J J^T
  double lambda = 0.0;                     // largest eigenvalue of M
  double vx = 1.0, vy = 0.0;               // boundary normal
  bool degenerate = false;
  double strength() const;  // ||b|| = sqrt(lambda)
};

// Closed-form fit J = (1/alpha) P^T X over one window.
// X is N_W x K row-major, rows ordered like basis offsets and already
// multiplied by the same row weights as P.
LocalFit local_fit(const std::vector<double>& window_samples, int layer_count,
                   const PositionBasis& basis);

}  // namespace gb
