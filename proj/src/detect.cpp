#include "gb/detect.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gb/local_fit.hpp"
#include "gb/threads.hpp"

namespace gb {

namespace {

double fold_angle(double vx, double vy) {
  double t = std::atan2(vy, vx);
  if (t < 0.0) t += std::numbers::pi;
  if (t >= std::numbers::pi) t -= std::numbers::pi;
  return t;
}

void store_pixel(RawBoundaryMap& out, std::size_t idx, double m00, double m01,
                 double m11) {
  const Eigen2x2 eig = eigen2x2_sym(m00, m01, m11);
  out.strength[idx] = std::sqrt(std::max(eig.lambda_max, 0.0));
  out.orientation[idx] = eig.degenerate ? 0.0 : fold_angle(eig.vx, eig.vy);
  out.degenerate[idx] = eig.degenerate ? 1 : 0;
}

RawBoundaryMap gb1_impl(const LayerStack& stack, const GbConfig& config,
                        int threads) {
  stack.validate();
  const int r = config.window_radius;
  if (r < 1) throw std::invalid_argument("gb1: window_radius < 1");
  const LayerStack padded = pad_replicate(apply_scales(stack), r);
  const PositionBasis basis =
      build_position_basis(r, config.epsilon, config.use_gaussian_weights);

  // Fused per-offset coefficients: rows of X carry the same weight as P,
  // so the kernel weight is w_i^2 * projected offset / alpha.
  const std::size_t n = basis.size();
  std::vector<double> cx(n), cy(n);
  const double inv_alpha = 1.0 / basis.alpha;
  for (std::size_t i = 0; i < n; ++i) {
    cx[i] = basis.weights[i] * basis.px[i] * inv_alpha;
    cy[i] = basis.weights[i] * basis.py[i] * inv_alpha;
  }

  const int w = stack.width, h = stack.height;
  const int pw = padded.width;
  const int K = stack.layer_count();
  RawBoundaryMap out(w, h);

#pragma omp parallel for schedule(static) num_threads(threads)
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double m00 = 0.0, m01 = 0.0, m11 = 0.0;
      for (int k = 0; k < K; ++k) {
        const double* layer = padded.layer(k);
        double jx = 0.0, jy = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double v =
              layer[static_cast<std::size_t>(y + r + basis.dy[i]) * pw +
                    (x + r + basis.dx[i])];
          jx += cx[i] * v;
          jy += cy[i] * v;
        }
        m00 += jx * jx;
        m01 += jx * jy;
        m11 += jy * jy;
      }
      store_pixel(out, static_cast<std::size_t>(y) * w + x, m00, m01, m11);
    }
  }
  return out;
}

}  // namespace

RawBoundaryMap gb1_detect(const LayerStack& stack, const GbConfig& config) {
  return gb1_impl(stack, config, worker_count());
}

RawBoundaryMap gb1_detect_serial(const LayerStack& stack,
                                 const GbConfig& config) {
  return gb1_impl(stack, config, 1);
}

IntegralImages build_integrals(const LayerStack& stack, int radius) {
  stack.validate();
  const LayerStack padded = pad_replicate(apply_scales(stack), radius);
  IntegralImages ii;
  ii.width = padded.width;
  ii.height = padded.height;
  ii.radius = radius;
  ii.layers = padded.layer_count();
  const std::size_t ts = ii.table_size();
  ii.s.assign(ts * ii.layers, 0.0);
  ii.sx.assign(ts * ii.layers, 0.0);
  ii.sy.assign(ts * ii.layers, 0.0);

  const int w = ii.width, h = ii.height;
#pragma omp parallel for schedule(static) num_threads(worker_count())
  for (int k = 0; k < ii.layers; ++k) {
    const double* src = padded.layer(k);
    double* ts_ = ii.s.data() + k * ts;
    double* tx = ii.sx.data() + k * ts;
    double* ty = ii.sy.data() + k * ts;
    for (int y = 0; y < h; ++y) {
      double row_s = 0.0, row_x = 0.0, row_y = 0.0;
      const std::size_t prev = static_cast<std::size_t>(y) * (w + 1);
      const std::size_t cur = static_cast<std::size_t>(y + 1) * (w + 1);
      for (int x = 0; x < w; ++x) {
        const double v = src[static_cast<std::size_t>(y) * w + x];
        row_s += v;
        row_x += static_cast<double>(x) * v;
        row_y += static_cast<double>(y) * v;
        ts_[cur + x + 1] = ts_[prev + x + 1] + row_s;
        tx[cur + x + 1] = tx[prev + x + 1] + row_x;
        ty[cur + x + 1] = ty[prev + x + 1] + row_y;
      }
    }
  }
  return ii;
}

RectSums rect_sums(const IntegralImages& ii, int x0, int y0, int x1, int y1,
                   int layer) {
  if (x1 < x0 || y1 < y0) return {};
  if (x0 < 0 || y0 < 0 || x1 >= ii.width || y1 >= ii.height || layer < 0 ||
      layer >= ii.layers)
    throw std::out_of_range("rect_sums: rectangle outside padded bounds");
  const int stride = ii.width + 1;
  const auto corner = [&](const double* t) {
    return t[(y1 + 1) * stride + (x1 + 1)] - t[y0 * stride + (x1 + 1)] -
           t[(y1 + 1) * stride + x0] + t[y0 * stride + x0];
  };
  RectSums out;
  out.s = corner(ii.table_s(layer));
  out.sx = corner(ii.table_sx(layer));
  out.sy = corner(ii.table_sy(layer));
  return out;
}

void gb2_local_J(const IntegralImages& ii, int x, int y, int radius,
                 double alpha, std::vector<double>& jx,
                 std::vector<double>& jy) {
  jx.assign(ii.layers, 0.0);
  jy.assign(ii.layers, 0.0);
  const int cx = x + ii.radius;  // window center in padded coordinates
  const int cy = y + ii.radius;
  const double inv_alpha = 1.0 / alpha;
  for (int k = 0; k < ii.layers; ++k) {
    const RectSums sums = rect_sums(ii, cx - radius, cy - radius, cx + radius,
                                    cy + radius, k);
    jx[k] = (sums.sx - cx * sums.s) * inv_alpha;
    jy[k] = (sums.sy - cy * sums.s) * inv_alpha;
  }
}

namespace {

RawBoundaryMap gb2_impl(const LayerStack& stack, const GbConfig& config,
                        int threads) {
  const int r = config.window_radius;
  if (r < 1) throw std::invalid_argument("gb2: window_radius < 1");
  if (config.use_gaussian_weights)
    throw std::invalid_argument(
        "gb2: Gaussian weighting is not representable; use multiscale");

  const IntegralImages ii = build_integrals(stack, r);
  // Large-epsilon alpha of the unweighted square window.
  const double sum_sq = static_cast<double>(r) * (r + 1) * (2 * r + 1) / 3.0;
  const double alpha = (2 * r + 1) * sum_sq;
  const double inv_alpha = 1.0 / alpha;

  const int w = stack.width, h = stack.height;
  const int K = stack.layer_count();
  RawBoundaryMap out(w, h);

#pragma omp parallel for schedule(static) num_threads(threads)
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int cx = x + r, cy = y + r;
      double m00 = 0.0, m01 = 0.0, m11 = 0.0;
      for (int k = 0; k < K; ++k) {
        const RectSums sums =
            rect_sums(ii, cx - r, cy - r, cx + r, cy + r, k);
        const double jx = (sums.sx - cx * sums.s) * inv_alpha;
        const double jy = (sums.sy - cy * sums.s) * inv_alpha;
        m00 += jx * jx;
        m01 += jx * jy;
        m11 += jy * jy;
      }
      store_pixel(out, static_cast<std::size_t>(y) * w + x, m00, m01, m11);
    }
  }
  return out;
}

}  // namespace

RawBoundaryMap gb2_detect(const LayerStack& stack, const GbConfig& config) {
  return gb2_impl(stack, config, worker_count());
}

RawBoundaryMap gb2_detect_serial(const LayerStack& stack,
                                 const GbConfig& config) {
  return gb2_impl(stack, config, 1);
}

RawBoundaryMap multiscale_detect(const LayerStack& stack,
                                 const std::vector<int>& radii,
                                 std::vector<double> combine_weights) {
  if (radii.empty())
    throw std::invalid_argument("multiscale_detect: empty radii list");
  if (combine_weights.empty()) combine_weights.assign(radii.size(), 1.0);
  if (combine_weights.size() != radii.size())
    throw std::invalid_argument("multiscale_detect: weight count mismatch");
  double total = 0.0;
  for (double w : combine_weights) {
    if (w < 0.0)
      throw std::invalid_argument("multiscale_detect: negative weight");
    total += w;
  }
  if (!(total > 0.0))
    throw std::invalid_argument("multiscale_detect: zero weight sum");

  RawBoundaryMap out(stack.width, stack.height);
  std::vector<double> best(out.size(), -1.0);
  for (std::size_t s = 0; s < radii.size(); ++s) {
    GbConfig cfg;
    cfg.window_radius = radii[s];
    cfg.epsilon = radii[s] * std::numbers::sqrt2;  // projection inactive
    const RawBoundaryMap scale = gb2_detect(stack, cfg);
    const double w = combine_weights[s] / total;
    for (std::size_t i = 0; i < out.size(); ++i) {
      out.strength[i] += w * scale.strength[i];
      if (scale.strength[i] > best[i]) {
        best[i] = scale.strength[i];
        out.orientation[i] = scale.orientation[i];
        out.degenerate[i] = scale.degenerate[i];
      }
    }
  }
  return out;
}

}  // namespace gb
