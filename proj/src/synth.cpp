#include "gb/synth.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace gb {

namespace {

bool point_in_polygon(const std::vector<std::pair<double, double>>& pts,
                      double x, double y) {
  bool inside = false;
  const std::size_t n = pts.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const auto [xi, yi] = pts[i];
    const auto [xj, yj] = pts[j];
    if ((yi > y) != (yj > y) &&
        x < (xj - xi) * (y - yi) / (yj - yi) + xi)
      inside = !inside;
  }
  return inside;
}

double polygon_area(const std::vector<std::pair<double, double>>& pts) {
  double a = 0.0;
  const std::size_t n = pts.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++)
    a += (pts[j].first + pts[i].first) * (pts[j].second - pts[i].second);
  return std::abs(a) / 2.0;
}

bool shape_contains(const SynthShape& shape, double x, double y) {
  switch (shape.kind) {
    case SynthShape::Kind::Step: {
      const double rad = shape.angle_deg * std::acos(-1.0) / 180.0;
      return (x - shape.cx) * std::cos(rad) + (y - shape.cy) * std::sin(rad) >
             0.0;
    }
    case SynthShape::Kind::Disk: {
      const double dx = x - shape.cx, dy = y - shape.cy;
      return dx * dx + dy * dy <= shape.radius * shape.radius;
    }
    case SynthShape::Kind::Polygon:
      return point_in_polygon(shape.points, x, y);
  }
  return false;
}

void validate_spec(const SynthSpec& spec) {
  if (spec.width < 2 || spec.height < 2 || spec.layers < 1)
    throw std::invalid_argument("synth: degenerate image size");
  if (static_cast<int>(spec.background.size()) != spec.layers ||
      static_cast<int>(spec.noise.size()) != spec.layers)
    throw std::invalid_argument("synth: background/noise layer mismatch");
  for (const SynthShape& s : spec.shapes) {
    if (static_cast<int>(s.values.size()) != spec.layers)
      throw std::invalid_argument("synth: shape value count mismatch");
    if (s.kind == SynthShape::Kind::Disk && !(s.radius > 0.0))
      throw std::invalid_argument("synth: zero-area disk");
    if (s.kind == SynthShape::Kind::Polygon &&
        (s.points.size() < 3 || polygon_area(s.points) <= 0.0))
      throw std::invalid_argument("synth: zero-area polygon");
  }
}

}  // namespace

SynthResult synth_generate(const SynthSpec& spec) {
  validate_spec(spec);
  const int w = spec.width, h = spec.height, K = spec.layers;

  // Region labels: background 0, shapes painted in order.
  std::vector<int> label(static_cast<std::size_t>(w) * h, 0);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (std::size_t s = 0; s < spec.shapes.size(); ++s)
        if (shape_contains(spec.shapes[s], x, y))
          label[static_cast<std::size_t>(y) * w + x] = static_cast<int>(s) + 1;

  SynthResult out;
  out.stack = LayerStack(w, h, K);
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int k = 0; k < K; ++k) {
    out.stack.names[k] = "synth" + std::to_string(k);
    double* dst = out.stack.layer(k);
    for (std::size_t i = 0; i < label.size(); ++i) {
      const double base = label[i] == 0 ? spec.background[k]
                                        : spec.shapes[label[i] - 1].values[k];
      const double noise = spec.noise[k] > 0.0 ? spec.noise[k] * gauss(rng) : 0.0;
      dst[i] = base + noise;
    }
  }

  // 1-pixel-wide boundary: pixel differs from its right or down neighbor.
  out.gt.assign(label.size(), 0);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      if ((x + 1 < w && label[i] != label[i + 1]) ||
          (y + 1 < h && label[i] != label[i + w]))
        out.gt[i] = 1;
    }

  // Staircase thinning: drop corner pixels whose two orthogonal neighbors
  // remain 8-connected through the diagonal, keeping straight runs and
  // junctions. Leaves a minimally dense 8-connected curve, the same
  // density a thinned detector output has.
  const auto at = [&](int x, int y) {
    return x >= 0 && x < w && y >= 0 && y < h &&
           out.gt[static_cast<std::size_t>(y) * w + x] != 0;
  };
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (!at(x, y)) continue;
      const bool n = at(x, y - 1), s = at(x, y + 1);
      const bool e = at(x + 1, y), wst = at(x - 1, y);
      if ((n && s) || (e && wst)) continue;  // straight through: keep
      if ((n && e) || (e && s) || (s && wst) || (wst && n))
        out.gt[static_cast<std::size_t>(y) * w + x] = 0;
    }
  return out;
}

namespace {

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

std::vector<std::pair<double, double>> parse_points(const std::string& s) {
  std::vector<std::pair<double, double>> out;
  std::stringstream ss(s);
  std::string pair;
  while (std::getline(ss, pair, ';')) {
    const auto comma = pair.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("synth spec: malformed point: " + pair);
    out.emplace_back(std::stod(pair.substr(0, comma)),
                     std::stod(pair.substr(comma + 1)));
  }
  return out;
}

}  // namespace

SynthSpec parse_synth_spec(std::istream& in) {
  SynthSpec spec;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string head;
    ss >> head;

    const auto kv = [](const std::string& tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error("synth spec: expected key=value: " + tok);
      return std::pair{tok.substr(0, eq), tok.substr(eq + 1)};
    };

    if (head.find('=') != std::string::npos) {
      const auto [key, value] = kv(head);
      if (key == "size") {
        const auto x = value.find('x');
        if (x == std::string::npos)
          throw std::runtime_error("synth spec: size must be WxH");
        spec.width = std::stoi(value.substr(0, x));
        spec.height = std::stoi(value.substr(x + 1));
      } else if (key == "layers") {
        spec.layers = std::stoi(value);
      } else if (key == "seed") {
        spec.seed = std::stoull(value);
      } else if (key == "background") {
        spec.background = parse_doubles(value);
      } else if (key == "noise") {
        spec.noise = parse_doubles(value);
      } else {
        throw std::runtime_error("synth spec: unknown key: " + key);
      }
      continue;
    }

    SynthShape shape;
    if (head == "step")
      shape.kind = SynthShape::Kind::Step;
    else if (head == "disk")
      shape.kind = SynthShape::Kind::Disk;
    else if (head == "polygon")
      shape.kind = SynthShape::Kind::Polygon;
    else
      throw std::runtime_error("synth spec: unknown shape: " + head);

    std::string tok;
    while (ss >> tok) {
      const auto [key, value] = kv(tok);
      if (key == "angle")
        shape.angle_deg = std::stod(value);
      else if (key == "cx")
        shape.cx = std::stod(value);
      else if (key == "cy")
        shape.cy = std::stod(value);
      else if (key == "r")
        shape.radius = std::stod(value);
      else if (key == "points")
        shape.points = parse_points(value);
      else if (key == "values")
        shape.values = parse_doubles(value);
      else
        throw std::runtime_error("synth spec: unknown shape key: " + key);
    }
    spec.shapes.push_back(std::move(shape));
  }
  if (spec.background.empty())
    spec.background.assign(spec.layers, 0.0);
  if (spec.noise.empty()) spec.noise.assign(spec.layers, 0.0);
  return spec;
}

SynthSpec load_synth_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("synth spec: cannot open " + path);
  return parse_synth_spec(in);
}

}  // namespace gb
