// Standalone benchmark comparing the serial reference kernels against the
// OpenMP ones, and Gb1 against Gb2, across image sizes.
#include <iostream>

#include "gb/bench.hpp"

int main() {
  gb::BenchOptions options;
  gb::run_bench(options, std::cout);
  return 0;
}
