#include "gb/bench.hpp"

#include <chrono>
#include <functional>
#include <ostream>
#include <random>

#include "gb/detect.hpp"
#include "gb/types.hpp"

namespace gb {

namespace {

LayerStack random_stack(int size, int layers, std::uint64_t seed) {
  LayerStack stack(size, size, layers);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (double& v : stack.data) v = uni(rng);
  return stack;
}

double time_seconds(const std::function<void()>& fn, int repeats) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

}  // namespace

void run_bench(const BenchOptions& options, std::ostream& out) {
  out << "size,pixels,radius,gb1_serial_s,gb1_omp_s,gb2_serial_s,gb2_omp_s,"
         "gb1_serial_2r_s,gb2_serial_2r_s\n";
  for (int size : options.sizes) {
    const LayerStack stack = random_stack(size, options.layers, 42);
    const GbConfig cfg = GbConfig::with_radius(options.radius);
    GbConfig cfg2r = GbConfig::with_radius(2 * options.radius);
    const int rep = options.repeats;
    const double gb1_serial =
        time_seconds([&] { gb1_detect_serial(stack, cfg); }, rep);
    const double gb1_omp = time_seconds([&] { gb1_detect(stack, cfg); }, rep);
    const double gb2_serial =
        time_seconds([&] { gb2_detect_serial(stack, cfg); }, rep);
    const double gb2_omp = time_seconds([&] { gb2_detect(stack, cfg); }, rep);
    const double gb1_serial_2r =
        time_seconds([&] { gb1_detect_serial(stack, cfg2r); }, rep);
    const double gb2_serial_2r =
        time_seconds([&] { gb2_detect_serial(stack, cfg2r); }, rep);
    out << size << ',' << static_cast<long>(size) * size << ','
        << options.radius << ',' << gb1_serial << ',' << gb1_omp << ','
        << gb2_serial << ',' << gb2_omp << ',' << gb1_serial_2r << ','
        << gb2_serial_2r << '\n';
  }
}

}  // namespace gb
