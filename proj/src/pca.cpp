#include "gb/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gb {

void eigh_sym(std::vector<double> a, int n, std::vector<double>& eigenvalues,
              std::vector<double>& eigenvectors) {
  if (n <= 0 || a.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("eigh_sym: bad matrix size");
  std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[i * n + i] = 1.0;

  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
    if (off < 1e-26 * std::max(1.0, std::abs(a[0]))) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double app = a[p * n + p], aqq = a[q * n + q];
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0)
                             ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                             : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int i = 0; i < n; ++i) {
          const double aip = a[i * n + p], aiq = a[i * n + q];
          a[i * n + p] = c * aip - s * aiq;
          a[i * n + q] = s * aip + c * aiq;
        }
        for (int i = 0; i < n; ++i) {
          const double api = a[p * n + i], aqi = a[q * n + i];
          a[p * n + i] = c * api - s * aqi;
          a[q * n + i] = s * api + c * aqi;
        }
        for (int i = 0; i < n; ++i) {
          const double vip = v[i * n + p], viq = v[i * n + q];
          v[i * n + p] = c * vip - s * viq;
          v[i * n + q] = s * vip + c * viq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a[i * n + i] > a[j * n + j]; });
  eigenvalues.resize(n);
  eigenvectors.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int j = 0; j < n; ++j) {
    eigenvalues[j] = a[order[j] * n + order[j]];
    for (int i = 0; i < n; ++i)
      eigenvectors[static_cast<std::size_t>(j) * n + i] = v[i * n + order[j]];
  }
}

namespace {

void fix_sign(std::vector<double>& vec) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < vec.size(); ++i)
    if (std::abs(vec[i]) > std::abs(vec[best])) best = i;
  if (vec[best] < 0.0)
    for (double& x : vec) x = -x;
}

Pca finish(std::vector<double> mean, std::vector<double> eigenvalues,
           const std::vector<double>& eigenvectors, int dim, int d,
           double scale) {
  Pca out;
  out.mean = std::move(mean);
  const double tol =
      1e-12 * std::max(eigenvalues.empty() ? 0.0 : eigenvalues[0], 1.0);
  for (int j = 0; j < d; ++j) {
    double lambda = (j < static_cast<int>(eigenvalues.size()))
                        ? eigenvalues[j] * scale
                        : 0.0;
    if (j >= static_cast<int>(eigenvalues.size()) || eigenvalues[j] <= tol) {
      // Canonical-axis convention for zero-variance directions.
      out.degenerate = true;
      std::vector<double> axis(dim, 0.0);
      axis[j % dim] = 1.0;
      out.components.push_back(std::move(axis));
      out.variances.push_back(0.0);
      continue;
    }
    std::vector<double> vec(eigenvectors.begin() + static_cast<std::size_t>(j) * dim,
                            eigenvectors.begin() + static_cast<std::size_t>(j + 1) * dim);
    fix_sign(vec);
    out.components.push_back(std::move(vec));
    out.variances.push_back(lambda);
  }
  return out;
}

}  // namespace

Pca fit_pca_from_cov(std::vector<double> mean, const std::vector<double>& cov,
                     int d) {
  const int dim = static_cast<int>(mean.size());
  if (d < 1 || d > dim) throw std::invalid_argument("fit_pca_from_cov: bad d");
  std::vector<double> evals, evecs;
  eigh_sym(cov, dim, evals, evecs);
  return finish(std::move(mean), std::move(evals), evecs, dim, d, 1.0);
}

Pca fit_pca(const std::vector<std::vector<double>>& samples, int d) {
  const int n = static_cast<int>(samples.size());
  if (n < d + 1)
    throw std::invalid_argument("fit_pca: need at least d + 1 samples");
  const int dim = static_cast<int>(samples[0].size());
  for (const auto& s : samples)
    if (static_cast<int>(s.size()) != dim)
      throw std::invalid_argument("fit_pca: ragged samples");
  if (d > dim) throw std::invalid_argument("fit_pca: d exceeds dimension");

  std::vector<double> mean(dim, 0.0);
  for (const auto& s : samples)
    for (int i = 0; i < dim; ++i) mean[i] += s[i];
  for (double& m : mean) m /= n;

  if (dim <= n) {
    std::vector<double> cov(static_cast<std::size_t>(dim) * dim, 0.0);
    for (const auto& s : samples)
      for (int i = 0; i < dim; ++i) {
        const double ci = s[i] - mean[i];
        for (int j = i; j < dim; ++j)
          cov[static_cast<std::size_t>(i) * dim + j] += ci * (s[j] - mean[j]);
      }
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < i; ++j)
        cov[static_cast<std::size_t>(i) * dim + j] =
            cov[static_cast<std::size_t>(j) * dim + i];
    for (double& c : cov) c /= n;
    return fit_pca_from_cov(std::move(mean), cov, d);
  }

  // Gram route for wide data: eigenvectors of the n x n centered Gram
  // matrix map back through the data matrix.
  std::vector<double> gram(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double dot = 0.0;
      for (int t = 0; t < dim; ++t)
        dot += (samples[i][t] - mean[t]) * (samples[j][t] - mean[t]);
      gram[static_cast<std::size_t>(i) * n + j] = dot;
      gram[static_cast<std::size_t>(j) * n + i] = dot;
    }
  std::vector<double> evals, evecs;
  eigh_sym(gram, n, evals, evecs);

  Pca out;
  out.mean = std::move(mean);
  const double tol = 1e-12 * std::max(evals.empty() ? 0.0 : evals[0], 1.0);
  for (int j = 0; j < d; ++j) {
    if (j >= n || evals[j] <= tol) {
      out.degenerate = true;
      std::vector<double> axis(dim, 0.0);
      axis[j % dim] = 1.0;
      out.components.push_back(std::move(axis));
      out.variances.push_back(0.0);
      continue;
    }
    std::vector<double> vec(dim, 0.0);
    for (int i = 0; i < n; ++i) {
      const double u = evecs[static_cast<std::size_t>(j) * n + i];
      if (u == 0.0) continue;
      for (int t = 0; t < dim; ++t)
        vec[t] += u * (samples[i][t] - out.mean[t]);
    }
    double norm = 0.0;
    for (double x : vec) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : vec) x /= norm;
    fix_sign(vec);
    out.components.push_back(std::move(vec));
    out.variances.push_back(evals[j] / n);
  }
  return out;
}

}  // namespace gb
