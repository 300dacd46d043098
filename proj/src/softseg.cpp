#include "gb/softseg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gb/threads.hpp"

namespace gb {

int ColorQuantizer::bin_of(double c0, double c1, double c2) const {
  const double c[3] = {c0, c1, c2};
  int idx = 0;
  for (int ch = 0; ch < 3; ++ch) {
    const double span = hi[ch] - lo[ch];
    int b = static_cast<int>((c[ch] - lo[ch]) / span * bins[ch]);
    b = std::clamp(b, 0, bins[ch] - 1);
    idx = idx * bins[ch] + b;
  }
  return idx;
}

namespace {

std::vector<int> bin_map(const LayerStack& image, const ColorQuantizer& q) {
  if (image.layer_count() != 3)
    throw std::invalid_argument("softseg: image must have 3 layers");
  std::vector<int> bins(image.layer_size());
  const double* c0 = image.layer(0);
  const double* c1 = image.layer(1);
  const double* c2 = image.layer(2);
#pragma omp parallel for schedule(static) num_threads(worker_count())
  for (std::size_t i = 0; i < bins.size(); ++i)
    bins[i] = q.bin_of(c0[i], c1[i], c2[i]);
  return bins;
}

}  // namespace

std::vector<std::uint8_t> patch_indicator(const LayerStack& image, int cx,
                                          int cy, int patch_radius,
                                          const ColorQuantizer& q) {
  if (image.layer_count() != 3)
    throw std::invalid_argument("patch_indicator: image must have 3 layers");
  std::vector<std::uint8_t> c(q.bin_count(), 0);
  const int x0 = std::max(cx - patch_radius, 0);
  const int x1 = std::min(cx + patch_radius, image.width - 1);
  const int y0 = std::max(cy - patch_radius, 0);
  const int y1 = std::min(cy + patch_radius, image.height - 1);
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x)
      c[q.bin_of(image.at(0, x, y), image.at(1, x, y), image.at(2, x, y))] = 1;
  return c;
}

ColorSubspace fit_color_subspace(
    const std::vector<std::vector<std::uint8_t>>& samples, int d) {
  std::vector<std::vector<double>> as_double(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    as_double[i].assign(samples[i].begin(), samples[i].end());
  ColorSubspace sub;
  sub.pca = fit_pca(as_double, d);
  return sub;
}

std::vector<double> figure_ground_score(const LayerStack& image,
                                        const std::vector<std::uint8_t>& c,
                                        const ColorSubspace& sub,
                                        const ColorQuantizer& q) {
  if (static_cast<int>(c.size()) != q.bin_count() ||
      sub.pca.dim() != q.bin_count())
    throw std::invalid_argument("figure_ground_score: quantizer mismatch");

  // Per-bin score table: sum_i a_i * v_i[bin].
  std::vector<double> table(q.bin_count(), 0.0);
  for (const auto& v : sub.pca.components) {
    double a = 0.0;
    for (int t = 0; t < q.bin_count(); ++t)
      a += (c[t] - sub.pca.mean[t]) * v[t];
    for (int t = 0; t < q.bin_count(); ++t) table[t] += a * v[t];
  }

  const std::vector<int> bins = bin_map(image, q);
  std::vector<double> score(bins.size());
  for (std::size_t i = 0; i < bins.size(); ++i) score[i] = table[bins[i]];
  return score;
}

namespace {

// Evenly spaced interior grid of n_s sample centers, row-major.
std::vector<std::pair<int, int>> sample_grid(int width, int height, int ns) {
  int gx = std::max(1, static_cast<int>(std::lround(
                           std::sqrt(static_cast<double>(ns) * width / height))));
  int gy = (ns + gx - 1) / gx;
  std::vector<std::pair<int, int>> centers;
  centers.reserve(ns);
  for (int iy = 0; iy < gy && static_cast<int>(centers.size()) < ns; ++iy) {
    const int y = static_cast<int>((iy + 0.5) * height / gy);
    for (int ix = 0; ix < gx && static_cast<int>(centers.size()) < ns; ++ix) {
      const int x = static_cast<int>((ix + 0.5) * width / gx);
      centers.emplace_back(std::min(x, width - 1), std::min(y, height - 1));
    }
  }
  return centers;
}

}  // namespace

SoftSegStack soft_segment(const LayerStack& image, const SoftSegConfig& cfg) {
  image.validate();
  if (cfg.sample_count < SoftSegStack::kLayers)
    throw std::invalid_argument("soft_segment: n_s must be at least 8");
  if (image.width < 2 * cfg.patch_radius + 1 ||
      image.height < 2 * cfg.patch_radius + 1)
    throw std::invalid_argument("soft_segment: image smaller than patch");

  const ColorQuantizer& q = cfg.quantizer;
  const int ns = cfg.sample_count;
  const int nbins = q.bin_count();

  SoftSegStack out;
  out.width = image.width;
  out.height = image.height;
  out.config = cfg;
  out.data.assign(SoftSegStack::kLayers * out.layer_size(), 0.0);

  const auto centers = sample_grid(image.width, image.height, ns);
  std::vector<std::vector<std::uint8_t>> indicators(centers.size());
  for (std::size_t i = 0; i < centers.size(); ++i)
    indicators[i] =
        patch_indicator(image, centers[i].first, centers[i].second,
                        cfg.patch_radius, q);

  // A rank-deficient subspace (fewer distinct patch types than requested
  // components) is fine; only a zero top variance means the image is one
  // flat color and every figure/ground score vanishes.
  ColorSubspace sub = fit_color_subspace(indicators, cfg.subspace_dim);
  if (sub.pca.variances.empty() || sub.pca.variances[0] <= 1e-18) {
    out.degenerate = true;
    return out;
  }

  // Each sampled classification is a pure function of the pixel's color
  // bin, so the n_s score maps are n_s per-bin lookup tables T (ns x nbins).
  std::vector<double> T(static_cast<std::size_t>(ns) * nbins, 0.0);
#pragma omp parallel for schedule(static) num_threads(worker_count())
  for (int j = 0; j < ns; ++j) {
    const auto& c = indicators[j];
    for (const auto& v : sub.pca.components) {
      double a = 0.0;
      for (int t = 0; t < nbins; ++t) a += (c[t] - sub.pca.mean[t]) * v[t];
      for (int t = 0; t < nbins; ++t)
        T[static_cast<std::size_t>(j) * nbins + t] += a * v[t];
    }
  }

  // Stage-2 PCA over the per-pixel n_s-vectors, aggregated by bin
  // frequency (pixels sharing a bin share their vector exactly).
  const std::vector<int> bins = bin_map(image, q);
  std::vector<double> freq(nbins, 0.0);
  for (int b : bins) freq[b] += 1.0;
  const double inv_n = 1.0 / static_cast<double>(bins.size());

  std::vector<double> mean(ns, 0.0);
  for (int b = 0; b < nbins; ++b) {
    if (freq[b] == 0.0) continue;
    for (int j = 0; j < ns; ++j)
      mean[j] += freq[b] * T[static_cast<std::size_t>(j) * nbins + b];
  }
  for (double& m : mean) m *= inv_n;

  std::vector<double> cov(static_cast<std::size_t>(ns) * ns, 0.0);
  std::vector<double> centered(ns);
  for (int b = 0; b < nbins; ++b) {
    if (freq[b] == 0.0) continue;
    for (int j = 0; j < ns; ++j)
      centered[j] = T[static_cast<std::size_t>(j) * nbins + b] - mean[j];
    for (int i = 0; i < ns; ++i) {
      const double fi = freq[b] * centered[i];
      for (int j = i; j < ns; ++j)
        cov[static_cast<std::size_t>(i) * ns + j] += fi * centered[j];
    }
  }
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < i; ++j)
      cov[static_cast<std::size_t>(i) * ns + j] =
          cov[static_cast<std::size_t>(j) * ns + i];
  for (double& c : cov) c *= inv_n;

  const Pca pca2 = fit_pca_from_cov(mean, cov, SoftSegStack::kLayers);

  // Projection coefficient of each bin onto each component, then min-max
  // normalize each output map to [0,1] (constant maps stay 0).
  for (int k = 0; k < SoftSegStack::kLayers; ++k) {
    std::vector<double> proj(nbins, 0.0);
    const auto& u = pca2.components[k];
    if (pca2.variances[k] > 0.0) {
      for (int b = 0; b < nbins; ++b) {
        if (freq[b] == 0.0) continue;
        double p = 0.0;
        for (int j = 0; j < ns; ++j)
          p += u[j] * (T[static_cast<std::size_t>(j) * nbins + b] - mean[j]);
        proj[b] = p;
      }
    }
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (int b = 0; b < nbins; ++b) {
      if (freq[b] == 0.0) continue;
      if (first || proj[b] < lo) lo = first ? proj[b] : std::min(lo, proj[b]);
      if (first || proj[b] > hi) hi = first ? proj[b] : std::max(hi, proj[b]);
      first = false;
    }
    const double span = hi - lo;
    double* dst = out.data.data() + k * out.layer_size();
    if (span > 0.0) {
      for (std::size_t i = 0; i < bins.size(); ++i)
        dst[i] = (proj[bins[i]] - lo) / span;
    }
  }
  return out;
}

LayerStack to_layer_stack(const SoftSegStack& seg) {
  LayerStack out(seg.width, seg.height, SoftSegStack::kLayers);
  out.data = seg.data;
  for (int k = 0; k < SoftSegStack::kLayers; ++k)
    out.names[k] = "softseg" + std::to_string(k);
  return out;
}

}  // namespace gb
