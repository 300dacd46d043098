#include "gb/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gb {

NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& objective,
    std::vector<double> x0, const NelderMeadOptions& opt) {
  const int n = static_cast<int>(x0.size());
  NelderMeadResult result;
  int evals = 0;
  const auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return objective(x);
  };

  if (n == 0) {
    result.x = x0;
    result.value = eval(x0);
    result.evaluations = evals;
    return result;
  }

  std::vector<std::vector<double>> simplex(n + 1, x0);
  std::vector<double> fvals(n + 1);
  for (int i = 0; i < n; ++i) simplex[i + 1][i] += opt.initial_step;
  for (int i = 0; i <= n; ++i) fvals[i] = eval(simplex[i]);

  std::vector<int> order(n + 1);
  while (evals < opt.max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return fvals[a] < fvals[b]; });
    const int best = order[0], worst = order[n], second = order[n - 1];
    if (fvals[worst] - fvals[best] <= opt.f_tolerance) break;

    std::vector<double> centroid(n, 0.0);
    for (int i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (int j = 0; j < n; ++j) centroid[j] += simplex[i][j];
    }
    for (double& c : centroid) c /= n;

    const auto point = [&](double coeff) {
      std::vector<double> p(n);
      for (int j = 0; j < n; ++j)
        p[j] = centroid[j] + coeff * (centroid[j] - simplex[worst][j]);
      return p;
    };

    std::vector<double> reflected = point(opt.reflection);
    const double fr = eval(reflected);
    if (fr < fvals[best]) {
      std::vector<double> expanded = point(opt.expansion);
      const double fe = eval(expanded);
      if (fe < fr) {
        simplex[worst] = std::move(expanded);
        fvals[worst] = fe;
      } else {
        simplex[worst] = std::move(reflected);
        fvals[worst] = fr;
      }
    } else if (fr < fvals[second]) {
      simplex[worst] = std::move(reflected);
      fvals[worst] = fr;
    } else {
      std::vector<double> contracted = point(-opt.contraction);
      const double fc = eval(contracted);
      if (fc < fvals[worst]) {
        simplex[worst] = std::move(contracted);
        fvals[worst] = fc;
      } else {
        for (int i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (int j = 0; j < n; ++j)
            simplex[i][j] =
                simplex[best][j] + opt.shrink * (simplex[i][j] - simplex[best][j]);
          fvals[i] = eval(simplex[i]);
          if (evals >= opt.max_evaluations) break;
        }
      }
    }
  }

  int best = 0;
  for (int i = 1; i <= n; ++i)
    if (fvals[i] < fvals[best]) best = i;
  result.x = simplex[best];
  result.value = fvals[best];
  result.evaluations = evals;
  return result;
}

}  // namespace gb
