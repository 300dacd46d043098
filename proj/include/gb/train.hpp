#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gb/eval.hpp"
#include "gb/logistic.hpp"
#include "gb/types.hpp"

namespace gb {

enum class DetectorKind { Gb1, Gb2 };

struct TrainSample {
  LayerStack stack;
  std::vector<std::uint8_t> gt;  // boundary indicator, width*height
};

struct EvalConfig {
  double d_max_factor = 0.0075;  // of the image diagonal
  int threshold_count = 33;
};

// Simplex search over log-scales maximizing mean ODS-F of the training
// set, computed on raw strengths (PR curves are invariant to the
// monotone logistic). Deterministic: all gamma start at 1, 200
// objective evaluations. Result normalized so max gamma = 1.
std::vector<double> learn_layer_scales(const std::vector<TrainSample>& train,
                                       DetectorKind detector,
                                       const GbConfig& config,
                                       const EvalConfig& eval_cfg = {});

struct TrainedParams {
  LogisticParams logistic;
  std::vector<double> gamma;
};

// key=value text file: w0, w1, gamma (comma-separated list).
void write_params(const std::string& path, const TrainedParams& params);
TrainedParams read_params(const std::string& path);

}  // namespace gb
