#include "gb/flo_io.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace gb {

namespace {
constexpr float kFloMagic = 202021.25f;
}

LayerStack read_flo(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_flo: cannot open " + path);
  float magic = 0.0f;
  std::int32_t width = 0, height = 0;
  in.read(reinterpret_cast<char*>(&magic), 4);
  if (!in || magic != kFloMagic)
    throw std::runtime_error("read_flo: not a flow file: " + path);
  in.read(reinterpret_cast<char*>(&width), 4);
  in.read(reinterpret_cast<char*>(&height), 4);
  if (!in || width < 1 || height < 1 || width > 99999 || height > 99999)
    throw std::runtime_error("read_flo: illegal dimensions in " + path);

  LayerStack flow(width, height, 2);
  flow.names = {"u", "v"};
  std::vector<float> buf(static_cast<std::size_t>(width) * height * 2);
  in.read(reinterpret_cast<char*>(buf.data()), buf.size() * 4);
  if (static_cast<std::size_t>(in.gcount()) != buf.size() * 4)
    throw std::runtime_error("read_flo: corrupt (short payload): " + path);
  char extra;
  if (in.get(extra))
    throw std::runtime_error("read_flo: corrupt (trailing bytes): " + path);
  for (std::size_t i = 0; i < flow.layer_size(); ++i) {
    flow.layer(0)[i] = buf[2 * i];
    flow.layer(1)[i] = buf[2 * i + 1];
  }
  return flow;
}

void write_flo(const std::string& path, const LayerStack& flow) {
  if (flow.layer_count() != 2)
    throw std::invalid_argument("write_flo: flow must have 2 layers");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_flo: cannot open " + path);
  const float magic = kFloMagic;
  const std::int32_t width = flow.width, height = flow.height;
  out.write(reinterpret_cast<const char*>(&magic), 4);
  out.write(reinterpret_cast<const char*>(&width), 4);
  out.write(reinterpret_cast<const char*>(&height), 4);
  for (std::size_t i = 0; i < flow.layer_size(); ++i) {
    const float u = static_cast<float>(flow.layer(0)[i]);
    const float v = static_cast<float>(flow.layer(1)[i]);
    out.write(reinterpret_cast<const char*>(&u), 4);
    out.write(reinterpret_cast<const char*>(&v), 4);
  }
  if (!out) throw std::runtime_error("write_flo: write failed " + path);
}

}  // namespace gb
