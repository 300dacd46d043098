#pragma once

#include <cstdint>
#include <vector>

namespace gb {

// Indicator of the largest 4-connected component where adjacent pixels
// differ in depth by at most tau. Ties broken by the smallest top-left
// (row-major) pixel index.
std::vector<std::uint8_t> depth_largest_component(
    const std::vector<double>& depth, int width, int height, double tau);

}  // namespace gb
