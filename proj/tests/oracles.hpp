// Independent brute-force oracles used by the tests. These deliberately
// avoid the library's closed-form and Jacobi code paths.
#pragma once

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "gb/geometry.hpp"

namespace oracle {

// Solves the 3x3 linear system a * x = b by Gaussian elimination with
// partial pivoting.
inline void solve3(double a[3][3], double b[3], double x[3]) {
  int idx[3] = {0, 1, 2};
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(a[idx[r]][col]) > std::abs(a[idx[pivot]][col])) pivot = r;
    std::swap(idx[col], idx[pivot]);
    const double d = a[idx[col]][col];
    if (d == 0.0) throw std::runtime_error("solve3: singular system");
    for (int r = col + 1; r < 3; ++r) {
      const double f = a[idx[r]][col] / d;
      for (int c = col; c < 3; ++c) a[idx[r]][c] -= f * a[idx[col]][c];
      b[idx[r]] -= f * b[idx[col]];
    }
  }
  for (int col = 2; col >= 0; --col) {
    double acc = b[idx[col]];
    for (int c = col + 1; c < 3; ++c) acc -= a[idx[col]][c] * x[c];
    x[col] = acc / a[idx[col]][col];
  }
}

// Weighted least squares of X ~ C + P J, unknowns (C_k, Jx_k, Jy_k) per
// layer, solved from the full normal equations. `raw_samples` is the
// *unweighted* N_W x K window (row-major); weights w_i^2 multiply the
// residuals, matching row-weighting of both X and P.
inline void least_squares_J(const std::vector<double>& raw_samples,
                            int layer_count, const gb::PositionBasis& basis,
                            std::vector<double>& jx, std::vector<double>& jy) {
  const std::size_t n = basis.size();
  jx.assign(layer_count, 0.0);
  jy.assign(layer_count, 0.0);
  for (int k = 0; k < layer_count; ++k) {
    double ata[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    double atb[3] = {0, 0, 0};
    for (std::size_t i = 0; i < n; ++i) {
      const double w2 = basis.weights[i] * basis.weights[i];
      // Unweighted design row (1, x_hat, y_hat); basis stores w * proj.
      const double row[3] = {1.0, basis.px[i] / basis.weights[i],
                             basis.py[i] / basis.weights[i]};
      const double v = raw_samples[i * layer_count + k];
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) ata[r][c] += w2 * row[r] * row[c];
        atb[r] += w2 * row[r] * v;
      }
    }
    double sol[3];
    solve3(ata, atb, sol);
    jx[k] = sol[1];
    jy[k] = sol[2];
  }
}

// Dense symmetric eigensolver by orthogonal (subspace) iteration with
// modified Gram-Schmidt; independent of the library's Jacobi routine.
// Returns the top-d eigenpairs, eigenvalues descending.
inline void top_eigenpairs(const std::vector<double>& a, int n, int d,
                           std::vector<double>& eigenvalues,
                           std::vector<std::vector<double>>& eigenvectors) {
  std::vector<std::vector<double>> q(d, std::vector<double>(n, 0.0));
  std::mt19937 rng(12345);
  std::normal_distribution<double> gauss;
  for (auto& v : q)
    for (double& x : v) x = gauss(rng);

  const auto matvec = [&](const std::vector<double>& v) {
    std::vector<double> out(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out[i] += a[i * n + j] * v[j];
    return out;
  };
  const auto orthonormalize = [&]() {
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < i; ++j) {
        double dot = 0.0;
        for (int t = 0; t < n; ++t) dot += q[i][t] * q[j][t];
        for (int t = 0; t < n; ++t) q[i][t] -= dot * q[j][t];
      }
      double norm = 0.0;
      for (double x : q[i]) norm += x * x;
      norm = std::sqrt(norm);
      for (double& x : q[i]) x /= norm;
    }
  };

  orthonormalize();
  for (int iter = 0; iter < 5000; ++iter) {
    for (int i = 0; i < d; ++i) q[i] = matvec(q[i]);
    orthonormalize();
  }
  eigenvalues.assign(d, 0.0);
  eigenvectors = q;
  for (int i = 0; i < d; ++i) {
    const std::vector<double> av = matvec(q[i]);
    for (int t = 0; t < n; ++t) eigenvalues[i] += q[i][t] * av[t];
  }
}

}  // namespace oracle
