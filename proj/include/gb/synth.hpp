#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "gb/types.hpp"

namespace gb {

// Shapes are painted in order; each defines a region with per-layer values.
struct SynthShape {
  enum class Kind { Step, Disk, Polygon };
  Kind kind = Kind::Disk;
  double angle_deg = 0.0;              // Step: normal direction
  double cx = 0.0, cy = 0.0;           // Step / Disk center
  double radius = 0.0;                 // Disk
  std::vector<std::pair<double, double>> points;  // Polygon vertices
  std::vector<double> values;          // one per layer
};

struct SynthSpec {
  int width = 0;
  int height = 0;
  int layers = 1;
  std::uint64_t seed = 0;
  std::vector<double> background;  // per-layer value of the base region
  std::vector<double> noise;       // per-layer Gaussian sigma
  std::vector<SynthShape> shapes;
};

struct SynthResult {
  LayerStack stack;
  std::vector<std::uint8_t> gt;  // 1-pixel-wide region borders
};

// Deterministic given the spec (including seed). Throws on zero-area shapes.
SynthResult synth_generate(const SynthSpec& spec);

// key=value / shape-per-line text format, '#' comments.
SynthSpec parse_synth_spec(std::istream& in);
SynthSpec load_synth_spec(const std::string& path);

}  // namespace gb
