#pragma once

#include <string>

#include "gb/types.hpp"

namespace gb {

// Middlebury .flo: float magic 202021.25, width i32, height i32,
// interleaved (u, v) float32, little-endian. Values pass through
// unscaled; layer scales carry relative importance.
LayerStack read_flo(const std::string& path);
void write_flo(const std::string& path, const LayerStack& flow);

}  // namespace gb
