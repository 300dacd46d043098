#include "gb/logistic.hpp"

#include <cmath>
#include <stdexcept>

namespace gb {

double logistic_prob(double strength, const LogisticParams& params) {
  return 1.0 / (1.0 + std::exp(params.w0 + params.w1 * strength));
}

LogisticParams fit_logistic(const std::vector<double>& strengths,
                            const std::vector<std::uint8_t>& labels) {
  const std::size_t n = strengths.size();
  if (n == 0 || labels.size() != n)
    throw std::invalid_argument("fit_logistic: size mismatch");
  std::size_t positives = 0;
  for (std::uint8_t l : labels) positives += l ? 1 : 0;
  if (positives == 0 || positives == n)
    throw std::invalid_argument("fit_logistic: both classes required");

  // Newton / IRLS on p = sigmoid(b0 + b1 * s); then w = -b.
  const double reg = 1e-4;
  double b0 = 0.0, b1 = 0.0;
  for (int iter = 0; iter < 100; ++iter) {
    double g0 = -reg * b0, g1 = -reg * b1;
    double h00 = reg, h01 = 0.0, h11 = reg;
    for (std::size_t i = 0; i < n; ++i) {
      const double s = strengths[i];
      const double p = 1.0 / (1.0 + std::exp(-(b0 + b1 * s)));
      const double resid = (labels[i] ? 1.0 : 0.0) - p;
      g0 += resid;
      g1 += resid * s;
      const double w = std::max(p * (1.0 - p), 1e-12);
      h00 += w;
      h01 += w * s;
      h11 += w * s * s;
    }
    if (std::hypot(g0, g1) <= 1e-8) break;
    const double det = h00 * h11 - h01 * h01;
    b0 += (h11 * g0 - h01 * g1) / det;
    b1 += (h00 * g1 - h01 * g0) / det;
  }
  return LogisticParams{-b0, -b1};
}

}  // namespace gb
