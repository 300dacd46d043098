#include "gb/train.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gb/detect.hpp"
#include "gb/nelder_mead.hpp"
#include "gb/nms.hpp"

namespace gb {

namespace {

RawBoundaryMap run_detector(const LayerStack& stack, DetectorKind kind,
                            const GbConfig& config) {
  return kind == DetectorKind::Gb1 ? gb1_detect(stack, config)
                                   : gb2_detect(stack, config);
}

// Mean ODS-F over the training set for the given log-scales. Each raw
// strength map is max-normalized before thresholding so the objective is
// invariant to a common scale factor.
double mean_ods_f(const std::vector<TrainSample>& train,
                  const std::vector<double>& log_gamma, DetectorKind kind,
                  const GbConfig& config, const EvalConfig& eval_cfg) {
  const std::vector<double> thresholds =
      default_thresholds(eval_cfg.threshold_count);
  double total = 0.0;
  for (const TrainSample& sample : train) {
    LayerStack stack = sample.stack;
    for (int k = 0; k < stack.layer_count(); ++k)
      stack.gamma[k] = std::exp(log_gamma[k]);
    const RawBoundaryMap map = run_detector(stack, kind, config);
    std::vector<double> thinned = nms(map);
    const double peak = *std::max_element(thinned.begin(), thinned.end());
    if (peak > 0.0)
      for (double& v : thinned) v /= peak;
    const double d_max = eval_cfg.d_max_factor *
                         std::hypot(static_cast<double>(stack.width),
                                    static_cast<double>(stack.height));
    const PRCurve curve = pr_curve(thinned, sample.gt, stack.width,
                                   stack.height, thresholds, d_max);
    total += curve.ods_f;
  }
  return total / train.size();
}

}  // namespace

std::vector<double> learn_layer_scales(const std::vector<TrainSample>& train,
                                       DetectorKind detector,
                                       const GbConfig& config,
                                       const EvalConfig& eval_cfg) {
  if (train.empty())
    throw std::invalid_argument("learn_layer_scales: empty training set");
  const int K = train[0].stack.layer_count();
  for (const TrainSample& s : train)
    if (s.stack.layer_count() != K)
      throw std::invalid_argument("learn_layer_scales: layer count varies");
  if (K == 1) return {1.0};

  const auto objective = [&](const std::vector<double>& log_gamma) {
    return -mean_ods_f(train, log_gamma, detector, config, eval_cfg);
  };
  NelderMeadOptions opt;
  opt.max_evaluations = 200;
  const NelderMeadResult result =
      nelder_mead(objective, std::vector<double>(K, 0.0), opt);

  std::vector<double> gamma(K);
  for (int k = 0; k < K; ++k) gamma[k] = std::exp(result.x[k]);
  const double peak = *std::max_element(gamma.begin(), gamma.end());
  for (double& g : gamma) g /= peak;
  return gamma;
}

void write_params(const std::string& path, const TrainedParams& params) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_params: cannot open " + path);
  out.precision(17);
  out << "w0=" << params.logistic.w0 << '\n';
  out << "w1=" << params.logistic.w1 << '\n';
  out << "gamma=";
  for (std::size_t k = 0; k < params.gamma.size(); ++k)
    out << (k ? "," : "") << params.gamma[k];
  out << '\n';
}

TrainedParams read_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_params: cannot open " + path);
  TrainedParams params;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("read_params: malformed line: " + line);
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "w0") {
      params.logistic.w0 = std::stod(value);
    } else if (key == "w1") {
      params.logistic.w1 = std::stod(value);
    } else if (key == "gamma") {
      params.gamma.clear();
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ','))
        params.gamma.push_back(std::stod(item));
    } else {
      throw std::runtime_error("read_params: unknown key: " + key);
    }
  }
  return params;
}

}  // namespace gb
