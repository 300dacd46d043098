#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gb {

struct MatchResult {
  long tp = 0;
  long fp = 0;
  long fn = 0;
  double d_max = 0.0;
};

// Zhang-Suen morphological thinning of a binary boundary map. Applied to
// binarized predictions before matching so that residual 2-pixel-wide
// runs (e.g. plateau ties surviving NMS) do not double-count as false
// positives. Isolated pixels and 1-pixel-wide curves pass through.
std::vector<std::uint8_t> thin_boundary_map(std::vector<std::uint8_t> map,
                                            int width, int height);

// Greedy one-to-one matching of boundary pixels: candidate pairs within
// Euclidean distance d_max, taken in ascending distance order with
// (row, column) tie-breaking.
MatchResult match_boundaries(const std::vector<std::uint8_t>& pred,
                             const std::vector<std::uint8_t>& gt, int width,
                             int height, double d_max);

struct PRPoint {
  double threshold = 0.0;
  long tp = 0, fp = 0, fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;  // 2PR/(P+R), 0 when P+R = 0
};

struct PRCurve {
  std::vector<PRPoint> points;
  double ods_f = 0.0;
  double ods_threshold = 0.0;
};

// n evenly spaced thresholds in the open interval (0, 1).
std::vector<double> default_thresholds(int n = 33);

// De-facto BSDS tolerance: 0.0075 * image diagonal.
double default_d_max(int width, int height);

// Per-threshold binarize (prob >= t), match, count. The probability map is
// expected already thinned (NMS is applied upstream in the pipelines).
PRCurve pr_curve(const std::vector<double>& prob,
                 const std::vector<std::uint8_t>& gt, int width, int height,
                 const std::vector<double>& thresholds, double d_max);

// Dataset-level aggregation: tp/fp/fn summed across images per threshold
// before computing P/R/F.
struct PRAccumulator {
  explicit PRAccumulator(std::vector<double> thresholds);
  void add(const std::vector<double>& prob, const std::vector<std::uint8_t>& gt,
           int width, int height, double d_max);
  void merge(const PRAccumulator& other);
  PRCurve finish() const;

  std::vector<double> thresholds;
  std::vector<long> tp, fp, fn;
};

void write_pr_csv(const std::string& path, const PRCurve& curve);

// Simple rendered PR plot (recall on x, precision on y), written as PNG.
void render_pr_curve(const std::string& path, const PRCurve& curve);

}  // namespace gb
