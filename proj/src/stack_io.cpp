#include "gb/stack_io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace gb {

namespace {

static_assert(std::endian::native == std::endian::little,
              "GBLS I/O assumes a little-endian host");

template <typename T>
void write_le(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_le(std::istream& in, const std::string& path) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw std::runtime_error("read_stack: truncated file " + path);
  return value;
}

}  // namespace

void write_stack(const std::string& path, const LayerStack& stack) {
  stack.validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_stack: cannot open " + path);
  out.write("GBLS", 4);
  write_le<std::uint16_t>(out, 1);  // version
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(stack.width));
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(stack.height));
  write_le<std::uint16_t>(out, static_cast<std::uint16_t>(stack.layer_count()));
  for (const std::string& name : stack.names) {
    out.write(name.c_str(), name.size());
    out.put('\0');
  }
  for (double v : stack.data)
    write_le<float>(out, static_cast<float>(v));
  if (!out) throw std::runtime_error("write_stack: write failed " + path);
}

LayerStack read_stack(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_stack: cannot open " + path);
  char magic[4] = {};
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "GBLS", 4) != 0)
    throw std::runtime_error("read_stack: not a GBLS file: " + path);
  const auto version = read_le<std::uint16_t>(in, path);
  if (version != 1)
    throw std::runtime_error("read_stack: unsupported version in " + path);
  const auto width = read_le<std::uint32_t>(in, path);
  const auto height = read_le<std::uint32_t>(in, path);
  const auto layers = read_le<std::uint16_t>(in, path);
  if (width == 0 || height == 0 || layers == 0)
    throw std::runtime_error("read_stack: empty dimensions in " + path);

  LayerStack stack(static_cast<int>(width), static_cast<int>(height), layers);
  for (int k = 0; k < layers; ++k) {
    std::string name;
    char c;
    while (in.get(c) && c != '\0') name.push_back(c);
    if (!in) throw std::runtime_error("read_stack: truncated names " + path);
    stack.names[k] = std::move(name);
  }
  for (double& v : stack.data) {
    const float f = read_le<float>(in, path);
    if (!std::isfinite(f))
      throw std::runtime_error("read_stack: non-finite value in " + path);
    v = f;
  }
  char extra;
  if (in.get(extra))
    throw std::runtime_error("read_stack: trailing bytes in " + path);
  return stack;
}

}  // namespace gb
