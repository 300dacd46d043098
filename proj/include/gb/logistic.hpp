#pragma once

#include <cstdint>
#include <vector>

namespace gb {

// b_p = 1 / (1 + exp(w0 + w1 * strength)); w1 < 0 after training on data
// where boundaries carry larger strengths.
struct LogisticParams {
  double w0 = 0.0;
  double w1 = 0.0;
};

double logistic_prob(double strength, const LogisticParams& params);

// L2-regularized (weight 1e-4) maximum likelihood via iteratively
// reweighted least squares; throws if only one class is present.
LogisticParams fit_logistic(const std::vector<double>& strengths,
                            const std::vector<std::uint8_t>& labels);

}  // namespace gb
