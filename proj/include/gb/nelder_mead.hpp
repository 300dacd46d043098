#pragma once

#include <functional>
#include <vector>

namespace gb {

// Derivative-free simplex minimization with the conventional
// reflection/expansion/contraction/shrink coefficients (1, 2, 0.5, 0.5).
struct NelderMeadOptions {
  int max_evaluations = 200;
  double initial_step = 0.25;
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  double f_tolerance = 1e-9;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
};

NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& objective,
    std::vector<double> x0, const NelderMeadOptions& options = {});

}  // namespace gb
