#include "gb/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <stdexcept>

namespace gb {

void rgb_to_lab(double r, double g, double b, double& L, double& a,
                double& bb) {
  const auto linearize = [](double c) {
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
  };
  const double rl = linearize(r), gl = linearize(g), bl = linearize(b);
  // sRGB D65 primaries.
  const double x = 0.4124564 * rl + 0.3575761 * gl + 0.1804375 * bl;
  const double y = 0.2126729 * rl + 0.7151522 * gl + 0.0721750 * bl;
  const double z = 0.0193339 * rl + 0.1191920 * gl + 0.9503041 * bl;
  const double xn = 0.95047, yn = 1.0, zn = 1.08883;
  const auto f = [](double t) {
    const double delta = 6.0 / 29.0;
    return t > delta * delta * delta
               ? std::cbrt(t)
               : t / (3.0 * delta * delta) + 4.0 / 29.0;
  };
  const double fx = f(x / xn), fy = f(y / yn), fz = f(z / zn);
  L = 116.0 * fy - 16.0;
  a = 500.0 * (fx - fy);
  bb = 200.0 * (fy - fz);
}

namespace {

struct RawImage {
  int width = 0, height = 0, channels = 0;
  std::vector<double> pixels;  // interleaved, already in [0,1]
};

int read_pnm_int(std::istream& in) {
  // Skips whitespace and '#' comments.
  int c = in.peek();
  while (c != EOF) {
    if (std::isspace(c)) {
      in.get();
    } else if (c == '#') {
      std::string dummy;
      std::getline(in, dummy);
    } else {
      break;
    }
    c = in.peek();
  }
  int value = -1;
  if (!(in >> value) || value < 0)
    throw std::runtime_error("pnm: malformed header");
  return value;
}

RawImage read_pnm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_image: cannot open " + path);
  char m0 = 0, m1 = 0;
  in.get(m0).get(m1);
  if (m0 != 'P' || (m1 != '5' && m1 != '6'))
    throw std::runtime_error("read_image: unsupported PNM variant in " + path);
  const int channels = m1 == '6' ? 3 : 1;
  const int width = read_pnm_int(in);
  const int height = read_pnm_int(in);
  const int maxval = read_pnm_int(in);
  if (maxval <= 0 || maxval > 65535)
    throw std::runtime_error("read_image: bad maxval in " + path);
  in.get();  // single whitespace after header

  RawImage img;
  img.width = width;
  img.height = height;
  img.channels = channels;
  const std::size_t count =
      static_cast<std::size_t>(width) * height * channels;
  img.pixels.resize(count);
  if (maxval < 256) {
    std::vector<std::uint8_t> buf(count);
    in.read(reinterpret_cast<char*>(buf.data()), buf.size());
    if (static_cast<std::size_t>(in.gcount()) != buf.size())
      throw std::runtime_error("read_image: truncated file " + path);
    for (std::size_t i = 0; i < count; ++i)
      img.pixels[i] = buf[i] / static_cast<double>(maxval);
  } else {
    std::vector<std::uint8_t> buf(count * 2);  // 16-bit big-endian
    in.read(reinterpret_cast<char*>(buf.data()), buf.size());
    if (static_cast<std::size_t>(in.gcount()) != buf.size())
      throw std::runtime_error("read_image: truncated file " + path);
    for (std::size_t i = 0; i < count; ++i) {
      const int v = (buf[2 * i] << 8) | buf[2 * i + 1];
      img.pixels[i] = v / static_cast<double>(maxval);
    }
  }
  return img;
}

RawImage read_png(const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "rb");
  if (!fp) throw std::runtime_error("read_image: cannot open " + path);
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    if (png) png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw std::runtime_error("read_image: libpng init failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw std::runtime_error("read_image: corrupt PNG " + path);
  }
  png_init_io(png, fp);
  png_read_info(png, info);

  png_set_palette_to_rgb(png);
  png_set_expand_gray_1_2_4_to_8(png);
  png_set_strip_alpha(png);
  png_read_update_info(png, info);

  const int width = png_get_image_width(png, info);
  const int height = png_get_image_height(png, info);
  const int depth = png_get_bit_depth(png, info);
  const int channels = png_get_channels(png, info);
  if (channels != 1 && channels != 3) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw std::runtime_error("read_image: unsupported PNG channel count");
  }

  const std::size_t rowbytes = png_get_rowbytes(png, info);
  std::vector<std::uint8_t> buf(rowbytes * height);
  std::vector<png_bytep> rows(height);
  for (int y = 0; y < height; ++y) rows[y] = buf.data() + y * rowbytes;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  std::fclose(fp);

  RawImage img;
  img.width = width;
  img.height = height;
  img.channels = channels;
  const std::size_t count =
      static_cast<std::size_t>(width) * height * channels;
  img.pixels.resize(count);
  if (depth == 16) {
    for (std::size_t i = 0; i < count; ++i) {
      const int v = (buf[2 * i] << 8) | buf[2 * i + 1];  // network order
      img.pixels[i] = v / 65535.0;
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) img.pixels[i] = buf[i] / 255.0;
  }
  return img;
}

}  // namespace

LayerStack read_image(const std::string& path, bool to_lab) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw std::runtime_error("read_image: cannot open " + path);
  unsigned char magic[8] = {};
  probe.read(reinterpret_cast<char*>(magic), 8);
  probe.close();

  RawImage img;
  static const unsigned char png_sig[8] = {0x89, 'P', 'N', 'G',
                                           0x0D, 0x0A, 0x1A, 0x0A};
  if (std::memcmp(magic, png_sig, 8) == 0)
    img = read_png(path);
  else if (magic[0] == 'P' && (magic[1] == '5' || magic[1] == '6'))
    img = read_pnm(path);
  else
    throw std::runtime_error("read_image: unsupported format: " + path);

  LayerStack stack(img.width, img.height, img.channels);
  if (img.channels == 1) {
    stack.names[0] = "gray";
    for (std::size_t i = 0; i < stack.layer_size(); ++i)
      stack.data[i] = img.pixels[i];
    return stack;
  }

  if (to_lab) {
    stack.names = {"L", "a", "b"};
    for (std::size_t i = 0; i < stack.layer_size(); ++i) {
      double L, a, b;
      rgb_to_lab(img.pixels[3 * i], img.pixels[3 * i + 1],
                 img.pixels[3 * i + 2], L, a, b);
      stack.layer(0)[i] = L / 100.0;
      stack.layer(1)[i] = (a + 128.0) / 255.0;
      stack.layer(2)[i] = (b + 128.0) / 255.0;
    }
  } else {
    stack.names = {"r", "g", "b"};
    for (std::size_t i = 0; i < stack.layer_size(); ++i)
      for (int c = 0; c < 3; ++c)
        stack.layer(c)[i] = img.pixels[3 * i + c];
  }
  return stack;
}

void write_pgm(const std::string& path, const std::vector<double>& gray,
               int width, int height) {
  if (gray.size() != static_cast<std::size_t>(width) * height)
    throw std::invalid_argument("write_pgm: size mismatch");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_pgm: cannot open " + path);
  out << "P5\n" << width << ' ' << height << "\n255\n";
  for (double v : gray) {
    const int q =
        static_cast<int>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
    out.put(static_cast<char>(q));
  }
}

namespace {

void write_png_impl(const std::string& path, const std::uint8_t* data,
                    int width, int height, int channels) {
  std::FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) throw std::runtime_error("write_png: cannot open " + path);
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info || setjmp(png_jmpbuf(png))) {
    if (png) png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    throw std::runtime_error("write_png: libpng failure for " + path);
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, width, height, 8,
               channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::vector<png_bytep> rows(height);
  for (int y = 0; y < height; ++y)
    rows[y] = const_cast<png_bytep>(data) +
              static_cast<std::size_t>(y) * width * channels;
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

}  // namespace

void write_png_gray8(const std::string& path, const std::vector<double>& gray,
                     int width, int height) {
  std::vector<std::uint8_t> buf(gray.size());
  for (std::size_t i = 0; i < gray.size(); ++i)
    buf[i] = static_cast<std::uint8_t>(
        std::lround(std::clamp(gray[i], 0.0, 1.0) * 255.0));
  write_png_impl(path, buf.data(), width, height, 1);
}

void write_png_rgb8(const std::string& path,
                    const std::vector<std::uint8_t>& rgb, int width,
                    int height) {
  if (rgb.size() != static_cast<std::size_t>(width) * height * 3)
    throw std::invalid_argument("write_png_rgb8: size mismatch");
  write_png_impl(path, rgb.data(), width, height, 3);
}

}  // namespace gb
