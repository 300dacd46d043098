#pragma once

#include <vector>

namespace gb {

// Top-d principal components. Components are orthonormal with a fixed
// sign convention: the largest-magnitude entry is positive. Directions
// with (numerically) zero variance fall back to canonical axes and set
// the degenerate flag.
struct Pca {
  std::vector<double> mean;
  std::vector<std::vector<double>> components;  // d vectors of length dim
  std::vector<double> variances;                // matching eigenvalues
  bool degenerate = false;

  int dim() const { return static_cast<int>(mean.size()); }
};

// Eigendecomposition of a dense symmetric matrix (cyclic Jacobi),
// eigenvalues sorted descending. Used for both PCA routes.
void eigh_sym(std::vector<double> a, int n, std::vector<double>& eigenvalues,
              std::vector<double>& eigenvectors /* column-major */);

// Fit from samples (each of length dim). Uses the covariance matrix when
// dim <= n_samples, otherwise the Gram-matrix route. Requires at least
// d + 1 samples.
Pca fit_pca(const std::vector<std::vector<double>>& samples, int d);

// Fit from a precomputed mean and covariance (row-major dim x dim).
Pca fit_pca_from_cov(std::vector<double> mean, const std::vector<double>& cov,
                     int d);

}  // namespace gb
