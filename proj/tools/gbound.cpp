// gbound: generalized boundary detection from multi-layer image
// interpretations (color, soft-segmentation, optical flow, depth).
#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "gb/depth.hpp"
#include "gb/detect.hpp"
#include "gb/eval.hpp"
#include "gb/flo_io.hpp"
#include "gb/image_io.hpp"
#include "gb/logistic.hpp"
#include "gb/nms.hpp"
#include "gb/softseg.hpp"
#include "gb/stack_io.hpp"
#include "gb/synth.hpp"
#include "gb/train.hpp"
#include "gb/bench.hpp"

namespace fs = std::filesystem;

namespace {

std::string lower_ext(const std::string& path) {
  std::string ext = fs::path(path).extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
  return ext;
}

gb::LayerStack load_layers(const std::string& path, bool lab) {
  const std::string ext = lower_ext(path);
  if (ext == ".gbls") return gb::read_stack(path);
  if (ext == ".flo") return gb::read_flo(path);
  return gb::read_image(path, lab);
}

void append_layers(gb::LayerStack& dst, const gb::LayerStack& src) {
  if (dst.layer_count() == 0) {
    dst = src;
    return;
  }
  if (src.width != dst.width || src.height != dst.height)
    throw std::runtime_error("input layer dimensions do not match");
  dst.data.insert(dst.data.end(), src.data.begin(), src.data.end());
  dst.names.insert(dst.names.end(), src.names.begin(), src.names.end());
  dst.gamma.insert(dst.gamma.end(), src.gamma.begin(), src.gamma.end());
}

gb::LayerStack single_layer(const std::vector<double>& map, int w, int h,
                            const std::string& name) {
  gb::LayerStack stack(w, h, 1);
  stack.names[0] = name;
  stack.data = map;
  return stack;
}

// Binary boundary map from a 1-layer stack or a grayscale image.
std::vector<std::uint8_t> load_binary_map(const std::string& path, int& w,
                                          int& h) {
  const gb::LayerStack stack = load_layers(path, false);
  if (stack.layer_count() != 1)
    throw std::runtime_error("expected a single-layer map: " + path);
  w = stack.width;
  h = stack.height;
  std::vector<std::uint8_t> out(stack.layer_size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = stack.data[i] > 0.5 ? 1 : 0;
  return out;
}

std::vector<double> load_prob_map(const std::string& path, int& w, int& h) {
  const gb::LayerStack stack = load_layers(path, false);
  if (stack.layer_count() != 1)
    throw std::runtime_error("expected a single-layer map: " + path);
  w = stack.width;
  h = stack.height;
  return stack.data;
}

struct DetectArgs {
  std::vector<std::string> inputs;
  std::vector<std::string> depth_inputs;
  std::string algo = "gb1";
  int radius = 3;
  double epsilon = -1.0;  // default r/2
  bool gaussian = false;
  bool lab = false;
  bool average_flow = false;
  bool apply_nms = false;
  double depth_tau = -1.0;
  std::string params_path;
  std::string out_prefix = "out";
  std::vector<int> radii;
};

int run_detect(const DetectArgs& args) {
  gb::LayerStack stack;
  gb::LayerStack flow_sum;
  int flow_count = 0;
  for (const std::string& path : args.inputs) {
    gb::LayerStack layers = load_layers(path, args.lab);
    if (args.average_flow && lower_ext(path) == ".flo") {
      if (flow_count == 0) {
        flow_sum = layers;
      } else {
        if (layers.width != flow_sum.width || layers.height != flow_sum.height)
          throw std::runtime_error("flow dimensions do not match");
        for (std::size_t i = 0; i < layers.data.size(); ++i)
          flow_sum.data[i] += layers.data[i];
      }
      ++flow_count;
      continue;
    }
    append_layers(stack, layers);
  }
  if (flow_count > 0) {
    for (double& v : flow_sum.data) v /= flow_count;
    append_layers(stack, flow_sum);
  }
  for (const std::string& path : args.depth_inputs) {
    gb::LayerStack depth = load_layers(path, false);
    if (depth.layer_count() != 1)
      throw std::runtime_error("depth input must have a single layer: " + path);
    if (args.depth_tau > 0.0) {
      const auto mask = gb::depth_largest_component(
          depth.data, depth.width, depth.height, args.depth_tau);
      for (std::size_t i = 0; i < depth.data.size(); ++i)
        if (!mask[i]) depth.data[i] = 0.0;
    }
    depth.names[0] = "depth";
    append_layers(stack, depth);
  }
  if (stack.layer_count() == 0) throw std::runtime_error("no input layers");

  gb::TrainedParams params;
  bool have_params = false;
  if (!args.params_path.empty()) {
    params = gb::read_params(args.params_path);
    have_params = true;
    if (!params.gamma.empty()) {
      if (static_cast<int>(params.gamma.size()) != stack.layer_count())
        throw std::runtime_error("parameter file gamma count does not match "
                                 "the input layer count");
      stack.gamma = params.gamma;
    }
  }

  gb::GbConfig cfg;
  cfg.window_radius = args.radius;
  cfg.epsilon = args.epsilon > 0.0 ? args.epsilon : args.radius / 2.0;
  cfg.use_gaussian_weights = args.gaussian;

  gb::RawBoundaryMap map;
  if (args.algo == "gb1") {
    map = gb::gb1_detect(stack, cfg);
  } else if (args.algo == "gb2") {
    map = gb::gb2_detect(stack, cfg);
  } else if (args.algo == "multiscale") {
    std::vector<int> radii = args.radii;
    if (radii.empty())
      radii = {std::max(1, args.radius / 2), args.radius, 2 * args.radius};
    map = gb::multiscale_detect(stack, radii);
  } else {
    throw std::runtime_error("unknown --algo: " + args.algo);
  }

  gb::write_stack(args.out_prefix + "_strength.gbls",
                  single_layer(map.strength, map.width, map.height, "strength"));
  gb::write_stack(
      args.out_prefix + "_orientation.gbls",
      single_layer(map.orientation, map.width, map.height, "theta"));

  std::vector<double> working = map.strength;
  if (args.apply_nms) {
    working = gb::nms(map);
    gb::write_stack(args.out_prefix + "_nms.gbls",
                    single_layer(working, map.width, map.height, "nms"));
  }
  if (have_params) {
    std::vector<double> prob(working.size());
    for (std::size_t i = 0; i < working.size(); ++i)
      prob[i] = working[i] > 0.0
                    ? gb::logistic_prob(working[i], params.logistic)
                    : 0.0;
    gb::write_stack(args.out_prefix + "_prob.gbls",
                    single_layer(prob, map.width, map.height, "prob"));
  }
  return 0;
}

struct TrainArgs {
  std::string manifest;
  std::string algo = "gb1";
  int radius = 3;
  double epsilon = -1.0;
  bool gaussian = false;
  bool lab = false;
  double dmax_factor = 0.0075;
  int thresholds = 33;
  std::string out = "params.txt";
};

int run_train(const TrainArgs& args) {
  std::ifstream in(args.manifest);
  if (!in) throw std::runtime_error("cannot open manifest " + args.manifest);
  std::vector<gb::TrainSample> samples;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string stack_path, gt_path;
    if (!(ss >> stack_path >> gt_path))
      throw std::runtime_error("manifest line needs: <stack> <gt>");
    gb::TrainSample sample;
    sample.stack = load_layers(stack_path, args.lab);
    int w = 0, h = 0;
    sample.gt = load_binary_map(gt_path, w, h);
    if (w != sample.stack.width || h != sample.stack.height)
      throw std::runtime_error("ground truth dimensions do not match: " +
                               gt_path);
    samples.push_back(std::move(sample));
  }
  if (samples.empty()) throw std::runtime_error("manifest is empty");

  gb::GbConfig cfg;
  cfg.window_radius = args.radius;
  cfg.epsilon = args.epsilon > 0.0 ? args.epsilon : args.radius / 2.0;
  cfg.use_gaussian_weights = args.gaussian;
  const gb::DetectorKind kind =
      args.algo == "gb2" ? gb::DetectorKind::Gb2 : gb::DetectorKind::Gb1;
  gb::EvalConfig eval_cfg;
  eval_cfg.d_max_factor = args.dmax_factor;
  eval_cfg.threshold_count = args.thresholds;

  gb::TrainedParams params;
  params.gamma = gb::learn_layer_scales(samples, kind, cfg, eval_cfg);

  // Calibrate the logistic on thinned strengths of the scaled stacks.
  std::vector<double> strengths;
  std::vector<std::uint8_t> labels;
  for (gb::TrainSample& sample : samples) {
    sample.stack.gamma = params.gamma;
    const gb::RawBoundaryMap map =
        kind == gb::DetectorKind::Gb1 ? gb::gb1_detect(sample.stack, cfg)
                                      : gb::gb2_detect(sample.stack, cfg);
    const std::vector<double> thinned = gb::nms(map);
    for (std::size_t i = 0; i < thinned.size(); ++i) {
      strengths.push_back(thinned[i]);
      labels.push_back(sample.gt[i]);
    }
  }
  params.logistic = gb::fit_logistic(strengths, labels);
  gb::write_params(args.out, params);
  std::cout << "wrote " << args.out << " (K=" << params.gamma.size()
            << ", w0=" << params.logistic.w0 << ", w1=" << params.logistic.w1
            << ")\n";
  return 0;
}

struct EvalArgs {
  std::string pred_dir, gt_dir;
  double dmax = -1.0;
  double dmax_factor = 0.0075;
  int thresholds = 33;
  std::string csv = "pr.csv";
  std::string plot;
};

int run_eval(const EvalArgs& args) {
  std::vector<fs::path> preds;
  for (const auto& entry : fs::directory_iterator(args.pred_dir))
    if (entry.is_regular_file()) preds.push_back(entry.path());
  std::sort(preds.begin(), preds.end());
  if (preds.empty()) throw std::runtime_error("no prediction files found");

  gb::PRAccumulator acc(gb::default_thresholds(args.thresholds));
  for (const fs::path& pred_path : preds) {
    fs::path gt_path;
    for (const char* ext : {".png", ".pgm", ".ppm", ".gbls"}) {
      fs::path candidate = fs::path(args.gt_dir) / pred_path.stem();
      candidate += ext;
      if (fs::exists(candidate)) {
        gt_path = candidate;
        break;
      }
    }
    if (gt_path.empty())
      throw std::runtime_error("no ground truth for " + pred_path.string());
    int pw = 0, ph = 0, gw = 0, gh = 0;
    const std::vector<double> prob = load_prob_map(pred_path.string(), pw, ph);
    const std::vector<std::uint8_t> gt =
        load_binary_map(gt_path.string(), gw, gh);
    if (pw != gw || ph != gh)
      throw std::runtime_error("pred/gt dimensions differ for " +
                               pred_path.string());
    const double d_max =
        args.dmax > 0.0 ? args.dmax : args.dmax_factor * std::hypot(pw, ph);
    acc.add(prob, gt, pw, ph, d_max);
  }
  const gb::PRCurve curve = acc.finish();
  gb::write_pr_csv(args.csv, curve);
  if (!args.plot.empty()) gb::render_pr_curve(args.plot, curve);
  std::cout << "ODS-F " << curve.ods_f << " at threshold "
            << curve.ods_threshold << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized boundary detection on multi-layer image stacks"};
  app.set_config("--config");
  app.require_subcommand(1);

  DetectArgs detect;
  auto* cmd_detect = app.add_subcommand("detect", "run boundary detection");
  cmd_detect->add_option("inputs", detect.inputs, "image/stack/flow files")
      ->required();
  cmd_detect->add_option("--depth", detect.depth_inputs,
                         "single-layer depth inputs");
  cmd_detect->add_option("--depth-tau", detect.depth_tau,
                         "similarity tolerance; keeps the largest component");
  cmd_detect->add_option("--algo", detect.algo, "gb1|gb2|multiscale");
  cmd_detect->add_option("--radius", detect.radius, "window radius");
  cmd_detect->add_option("--epsilon", detect.epsilon,
                         "disk radius (default radius/2)");
  cmd_detect->add_flag("--gaussian", detect.gaussian,
                       "Gaussian row weighting (gb1 only)");
  cmd_detect->add_flag("--lab", detect.lab, "convert color images to CIE Lab");
  cmd_detect->add_flag("--average", detect.average_flow,
                       "average all .flo inputs into one flow pair");
  cmd_detect->add_flag("--nms", detect.apply_nms, "write thinned strength");
  cmd_detect->add_option("--params", detect.params_path,
                         "trained parameter file (gamma + logistic)");
  cmd_detect->add_option("--out", detect.out_prefix, "output prefix");
  cmd_detect->add_option("--radii", detect.radii, "multiscale radii")
      ->delimiter(',');

  struct {
    std::string input;
    int ns = 150;
    int patch_radius = 2;
    int subspace_dim = 4;
    bool lab = false;
    std::string out = "softseg.gbls";
    std::string viz;
  } seg;
  auto* cmd_seg = app.add_subcommand("softseg", "soft figure/ground layers");
  cmd_seg->add_option("input", seg.input, "color image")->required();
  cmd_seg->add_option("--ns", seg.ns, "sample count");
  cmd_seg->add_option("--patch-radius", seg.patch_radius, "patch radius");
  cmd_seg->add_option("--subspace-dim", seg.subspace_dim, "color subspace dim");
  cmd_seg->add_flag("--lab", seg.lab, "convert to CIE Lab first");
  cmd_seg->add_option("--out", seg.out, "output stack path");
  cmd_seg->add_option("--viz", seg.viz, "RGB visualization of first 3 maps");

  TrainArgs train;
  auto* cmd_train = app.add_subcommand("train", "learn scales and logistic");
  cmd_train->add_option("--manifest", train.manifest, "lines: <stack> <gt>")
      ->required();
  cmd_train->add_option("--algo", train.algo, "gb1|gb2");
  cmd_train->add_option("--radius", train.radius, "window radius");
  cmd_train->add_option("--epsilon", train.epsilon, "disk radius");
  cmd_train->add_flag("--gaussian", train.gaussian, "Gaussian weighting");
  cmd_train->add_flag("--lab", train.lab, "convert color images to CIE Lab");
  cmd_train->add_option("--dmax-factor", train.dmax_factor,
                        "matching tolerance as a diagonal fraction");
  cmd_train->add_option("--thresholds", train.thresholds, "threshold count");
  cmd_train->add_option("--out", train.out, "parameter file");

  EvalArgs eval;
  auto* cmd_eval = app.add_subcommand("eval", "precision-recall evaluation");
  cmd_eval->add_option("--pred-dir", eval.pred_dir, "probability maps")
      ->required();
  cmd_eval->add_option("--gt-dir", eval.gt_dir, "ground-truth maps")
      ->required();
  cmd_eval->add_option("--dmax", eval.dmax, "matching tolerance in pixels");
  cmd_eval->add_option("--dmax-factor", eval.dmax_factor,
                       "tolerance as a diagonal fraction");
  cmd_eval->add_option("--thresholds", eval.thresholds, "threshold count");
  cmd_eval->add_option("--out", eval.csv, "CSV output path");
  cmd_eval->add_option("--plot", eval.plot, "PR-curve PNG path");

  gb::BenchOptions bench;
  std::string bench_out;
  auto* cmd_bench = app.add_subcommand("bench", "timing sweeps");
  cmd_bench->add_option("--sizes", bench.sizes, "image sizes")->delimiter(',');
  cmd_bench->add_option("--radius", bench.radius, "window radius");
  cmd_bench->add_option("--layers", bench.layers, "layer count");
  cmd_bench->add_option("--repeats", bench.repeats, "repeats (min taken)");
  cmd_bench->add_option("--out", bench_out, "CSV path (default stdout)");

  struct {
    std::string spec;
    std::int64_t seed = -1;
    std::string out = "synth";
  } synth;
  auto* cmd_synth = app.add_subcommand("synth", "generate a synthetic sample");
  cmd_synth->add_option("--spec", synth.spec, "spec file")->required();
  cmd_synth->add_option("--seed", synth.seed, "override spec seed");
  cmd_synth->add_option("--out", synth.out, "output prefix");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_detect->parsed()) return run_detect(detect);
    if (cmd_seg->parsed()) {
      const gb::LayerStack image = load_layers(seg.input, seg.lab);
      gb::SoftSegConfig cfg;
      cfg.sample_count = seg.ns;
      cfg.patch_radius = seg.patch_radius;
      cfg.subspace_dim = seg.subspace_dim;
      const gb::SoftSegStack result = gb::soft_segment(image, cfg);
      gb::write_stack(seg.out, gb::to_layer_stack(result));
      if (!seg.viz.empty()) {
        std::vector<std::uint8_t> rgb(result.layer_size() * 3);
        for (std::size_t i = 0; i < result.layer_size(); ++i)
          for (int c = 0; c < 3; ++c)
            rgb[3 * i + c] = static_cast<std::uint8_t>(
                std::clamp(result.layer(c)[i], 0.0, 1.0) * 255.0);
        gb::write_png_rgb8(seg.viz, rgb, result.width, result.height);
      }
      return 0;
    }
    if (cmd_train->parsed()) return run_train(train);
    if (cmd_eval->parsed()) return run_eval(eval);
    if (cmd_bench->parsed()) {
      if (bench_out.empty()) {
        gb::run_bench(bench, std::cout);
      } else {
        std::ofstream out(bench_out);
        if (!out) throw std::runtime_error("cannot open " + bench_out);
        gb::run_bench(bench, out);
      }
      return 0;
    }
    if (cmd_synth->parsed()) {
      gb::SynthSpec spec = gb::load_synth_spec(synth.spec);
      if (synth.seed >= 0) spec.seed = static_cast<std::uint64_t>(synth.seed);
      const gb::SynthResult result = gb::synth_generate(spec);
      gb::write_stack(synth.out + "_stack.gbls", result.stack);
      std::vector<double> gt(result.gt.begin(), result.gt.end());
      gb::write_pgm(synth.out + "_gt.pgm", gt, result.stack.width,
                    result.stack.height);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "gbound: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
