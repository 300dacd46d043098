#include "gb/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <tuple>

#include "gb/image_io.hpp"

namespace gb {

std::vector<double> default_thresholds(int n) {
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = static_cast<double>(i + 1) / (n + 1);
  return t;
}

double default_d_max(int width, int height) {
  return 0.0075 * std::hypot(static_cast<double>(width),
                             static_cast<double>(height));
}

std::vector<std::uint8_t> thin_boundary_map(std::vector<std::uint8_t> map,
                                            int width, int height) {
  if (map.size() != static_cast<std::size_t>(width) * height)
    throw std::invalid_argument("thin_boundary_map: dimension mismatch");
  const auto at = [&](int x, int y) -> int {
    return x >= 0 && x < width && y >= 0 && y < height &&
                   map[static_cast<std::size_t>(y) * width + x]
               ? 1
               : 0;
  };
  std::vector<std::size_t> kill;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int pass = 0; pass < 2; ++pass) {
      kill.clear();
      for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
          if (!at(x, y)) continue;
          // Clockwise 8-neighborhood starting north: P2..P9.
          const int p[8] = {at(x, y - 1),     at(x + 1, y - 1), at(x + 1, y),
                            at(x + 1, y + 1), at(x, y + 1),     at(x - 1, y + 1),
                            at(x - 1, y),     at(x - 1, y - 1)};
          int b = 0, a = 0;
          for (int i = 0; i < 8; ++i) {
            b += p[i];
            if (p[i] == 0 && p[(i + 1) % 8] == 1) ++a;
          }
          if (b < 2 || b > 6 || a != 1) continue;
          const bool cond =
              pass == 0 ? (p[0] * p[2] * p[4] == 0 && p[2] * p[4] * p[6] == 0)
                        : (p[0] * p[2] * p[6] == 0 && p[0] * p[4] * p[6] == 0);
          if (cond) kill.push_back(static_cast<std::size_t>(y) * width + x);
        }
      for (std::size_t i : kill) map[i] = 0;
      changed = changed || !kill.empty();
    }
  }

  // Staircase pass: a pure corner pixel whose two orthogonal neighbors are
  // 8-connected through the diagonal is redundant on an 8-connected curve.
  // Zhang-Suen keeps these (it preserves 4-connectivity); boundary curves
  // only need 8-connectivity, and matching counts every extra pixel as a
  // false positive.
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      if (!at(x, y)) continue;
      const int n = at(x, y - 1), s = at(x, y + 1);
      const int e = at(x + 1, y), w = at(x - 1, y);
      if ((n && s) || (e && w)) continue;  // straight through: keep
      if ((n && e) || (e && s) || (s && w) || (w && n))
        map[static_cast<std::size_t>(y) * width + x] = 0;
    }
  return map;
}

MatchResult match_boundaries(const std::vector<std::uint8_t>& pred,
                             const std::vector<std::uint8_t>& gt, int width,
                             int height, double d_max) {
  const std::size_t n = static_cast<std::size_t>(width) * height;
  if (pred.size() != n || gt.size() != n)
    throw std::invalid_argument("match_boundaries: dimension mismatch");
  if (!(d_max > 0.0))
    throw std::invalid_argument("match_boundaries: d_max must be positive");

  std::vector<int> pred_px, gt_px;  // row-major pixel indices
  for (std::size_t i = 0; i < n; ++i) {
    if (pred[i]) pred_px.push_back(static_cast<int>(i));
    if (gt[i]) gt_px.push_back(static_cast<int>(i));
  }

  // Bucket gt pixels on a coarse grid so candidate enumeration stays local.
  const int cell = std::max(1, static_cast<int>(std::ceil(d_max)));
  const int gw = (width + cell - 1) / cell;
  const int gh = (height + cell - 1) / cell;
  std::vector<std::vector<int>> grid(static_cast<std::size_t>(gw) * gh);
  for (std::size_t gi = 0; gi < gt_px.size(); ++gi) {
    const int x = gt_px[gi] % width, y = gt_px[gi] / width;
    grid[(y / cell) * gw + (x / cell)].push_back(static_cast<int>(gi));
  }

  const double d2_max = d_max * d_max;
  std::vector<std::tuple<double, int, int>> candidates;  // (d2, pi, gi)
  for (std::size_t pi = 0; pi < pred_px.size(); ++pi) {
    const int px = pred_px[pi] % width, py = pred_px[pi] / width;
    const int cx0 = std::max(0, px / cell - 1), cx1 = std::min(gw - 1, px / cell + 1);
    const int cy0 = std::max(0, py / cell - 1), cy1 = std::min(gh - 1, py / cell + 1);
    for (int cy = cy0; cy <= cy1; ++cy)
      for (int cx = cx0; cx <= cx1; ++cx)
        for (int gi : grid[cy * gw + cx]) {
          const int gx = gt_px[gi] % width, gy = gt_px[gi] / width;
          const double d2 = static_cast<double>(px - gx) * (px - gx) +
                            static_cast<double>(py - gy) * (py - gy);
          if (d2 <= d2_max)
            candidates.emplace_back(d2, static_cast<int>(pi), gi);
        }
  }
  std::sort(candidates.begin(), candidates.end());

  std::vector<char> pred_used(pred_px.size(), 0), gt_used(gt_px.size(), 0);
  long tp = 0;
  for (const auto& [d2, pi, gi] : candidates) {
    if (pred_used[pi] || gt_used[gi]) continue;
    pred_used[pi] = gt_used[gi] = 1;
    ++tp;
  }

  MatchResult out;
  out.tp = tp;
  out.fp = static_cast<long>(pred_px.size()) - tp;
  out.fn = static_cast<long>(gt_px.size()) - tp;
  out.d_max = d_max;
  return out;
}

namespace {

PRPoint make_point(double threshold, long tp, long fp, long fn) {
  PRPoint p;
  p.threshold = threshold;
  p.tp = tp;
  p.fp = fp;
  p.fn = fn;
  p.precision = (tp + fp) > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
  p.recall = (tp + fn) > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
  const double pr = p.precision + p.recall;
  p.f = pr > 0.0 ? 2.0 * p.precision * p.recall / pr : 0.0;
  return p;
}

PRCurve curve_from_points(std::vector<PRPoint> points) {
  PRCurve c;
  c.points = std::move(points);
  for (const PRPoint& p : c.points) {
    if (p.f > c.ods_f) {
      c.ods_f = p.f;
      c.ods_threshold = p.threshold;
    }
  }
  return c;
}

}  // namespace

PRCurve pr_curve(const std::vector<double>& prob,
                 const std::vector<std::uint8_t>& gt, int width, int height,
                 const std::vector<double>& thresholds, double d_max) {
  PRAccumulator acc(thresholds);
  acc.add(prob, gt, width, height, d_max);
  return acc.finish();
}

PRAccumulator::PRAccumulator(std::vector<double> th)
    : thresholds(std::move(th)),
      tp(thresholds.size(), 0),
      fp(thresholds.size(), 0),
      fn(thresholds.size(), 0) {}

void PRAccumulator::add(const std::vector<double>& prob,
                        const std::vector<std::uint8_t>& gt, int width,
                        int height, double d_max) {
  std::vector<std::uint8_t> pred(prob.size());
  for (std::size_t t = 0; t < thresholds.size(); ++t) {
    for (std::size_t i = 0; i < prob.size(); ++i)
      pred[i] = prob[i] >= thresholds[t] ? 1 : 0;
    const MatchResult m = match_boundaries(
        thin_boundary_map(pred, width, height), gt, width, height, d_max);
    tp[t] += m.tp;
    fp[t] += m.fp;
    fn[t] += m.fn;
  }
}

void PRAccumulator::merge(const PRAccumulator& other) {
  if (other.thresholds != thresholds)
    throw std::invalid_argument("PRAccumulator: threshold grids differ");
  for (std::size_t t = 0; t < thresholds.size(); ++t) {
    tp[t] += other.tp[t];
    fp[t] += other.fp[t];
    fn[t] += other.fn[t];
  }
}

PRCurve PRAccumulator::finish() const {
  std::vector<PRPoint> points;
  points.reserve(thresholds.size());
  for (std::size_t t = 0; t < thresholds.size(); ++t)
    points.push_back(make_point(thresholds[t], tp[t], fp[t], fn[t]));
  return curve_from_points(std::move(points));
}

void write_pr_csv(const std::string& path, const PRCurve& curve) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_pr_csv: cannot open " + path);
  out << "threshold,tp,fp,fn,precision,recall,f\n";
  for (const PRPoint& p : curve.points)
    out << p.threshold << ',' << p.tp << ',' << p.fp << ',' << p.fn << ','
        << p.precision << ',' << p.recall << ',' << p.f << '\n';
  out << "ODS," << curve.ods_threshold << ",,,,," << curve.ods_f << '\n';
}

void render_pr_curve(const std::string& path, const PRCurve& curve) {
  const int size = 512, margin = 48;
  std::vector<std::uint8_t> rgb(static_cast<std::size_t>(size) * size * 3, 255);
  const auto put = [&](int x, int y, std::uint8_t r, std::uint8_t g,
                       std::uint8_t b) {
    if (x < 0 || y < 0 || x >= size || y >= size) return;
    const std::size_t i = (static_cast<std::size_t>(y) * size + x) * 3;
    rgb[i] = r;
    rgb[i + 1] = g;
    rgb[i + 2] = b;
  };
  const int plot = size - 2 * margin;
  const auto px = [&](double recall) {
    return margin + static_cast<int>(recall * plot);
  };
  const auto py = [&](double precision) {
    return size - margin - static_cast<int>(precision * plot);
  };

  for (int g = 0; g <= 10; ++g) {
    const int x = px(g / 10.0), y = py(g / 10.0);
    for (int t = margin; t <= size - margin; ++t) {
      put(x, t, 220, 220, 220);
      put(t, y, 220, 220, 220);
    }
  }
  for (int t = margin; t <= size - margin; ++t) {
    put(t, size - margin, 0, 0, 0);  // recall axis
    put(margin, t, 0, 0, 0);         // precision axis
  }

  const auto line = [&](int x0, int y0, int x1, int y1) {
    const int steps = std::max({std::abs(x1 - x0), std::abs(y1 - y0), 1});
    for (int s = 0; s <= steps; ++s) {
      const int x = x0 + (x1 - x0) * s / steps;
      const int y = y0 + (y1 - y0) * s / steps;
      put(x, y, 200, 0, 0);
      put(x + 1, y, 200, 0, 0);
      put(x, y + 1, 200, 0, 0);
    }
  };
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const PRPoint& a = curve.points[i - 1];
    const PRPoint& b = curve.points[i];
    line(px(a.recall), py(a.precision), px(b.recall), py(b.precision));
  }
  write_png_rgb8(path, rgb, size, size);
}

}  // namespace gb
