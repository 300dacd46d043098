#pragma once

#include <vector>

#include "gb/types.hpp"

namespace gb {

// Non-maxima suppression along the recovered normal: a pixel survives iff
// its strength is >= the bilinearly interpolated strengths one pixel away
// on both sides along the normal. Degenerate pixels use a 3x3
// keep-if-local-max rule. Suppressed pixels are set to 0.
std::vector<double> nms(const RawBoundaryMap& map);

// Same, with the strength map supplied separately (orientation and
// degeneracy taken from `map`).
std::vector<double> nms(const std::vector<double>& strength,
                        const RawBoundaryMap& map);

}  // namespace gb
