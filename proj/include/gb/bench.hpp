#pragma once

#include <iosfwd>
#include <vector>

namespace gb {

struct BenchOptions {
  std::vector<int> sizes = {128, 256, 512};
  int radius = 4;
  int layers = 1;
  int repeats = 3;
};

// Timing sweep over image sizes: Gb1 vs Gb2, serial vs OpenMP, plus a
// doubled-radius column. Emits CSV to `out`.
void run_bench(const BenchOptions& options, std::ostream& out);

}  // namespace gb
