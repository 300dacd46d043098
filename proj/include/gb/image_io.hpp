#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gb/types.hpp"

namespace gb {

// sRGB (0..1) to CIE Lab under D65. Returns (L, a, b) in the usual ranges
// (L in 0..100, a/b roughly -128..127).
void rgb_to_lab(double r, double g, double b, double& L, double& a, double& bb);

// Reads a binary PGM/PPM (P5/P6, 8/16-bit) or PNG (8/16-bit gray/RGB)
// into a 1- or 3-layer stack with values scaled to [0,1]. When `to_lab`
// is set, 3-channel input is converted to CIE Lab and rescaled to
// comparable ranges: L/100, (a+128)/255, (b+128)/255.
LayerStack read_image(const std::string& path, bool to_lab = false);

// 8-bit writers; values clamped to [0,1].
void write_pgm(const std::string& path, const std::vector<double>& gray,
               int width, int height);
void write_png_gray8(const std::string& path, const std::vector<double>& gray,
                     int width, int height);
void write_png_rgb8(const std::string& path,
                    const std::vector<std::uint8_t>& rgb, int width,
                    int height);

}  // namespace gb
