#pragma once

#include <string>

#include "gb/types.hpp"

namespace gb {

// Binary layer-stack container: magic "GBLS", version u16, N_x u32,
// N_y u32, K u16 (little-endian), K null-terminated name tags, then
// K * N_y * N_x little-endian float32 in layer-major, row-major order.
void write_stack(const std::string& path, const LayerStack& stack);
LayerStack read_stack(const std::string& path);

}  // namespace gb
