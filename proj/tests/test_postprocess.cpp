#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <vector>

#include "gb/detect.hpp"
#include "gb/logistic.hpp"
#include "gb/nelder_mead.hpp"
#include "gb/nms.hpp"
#include "gb/train.hpp"

using namespace gb;

TEST_CASE("logistic_prob hand examples") {
  CHECK(logistic_prob(0.7, {0.0, 0.0}) == doctest::Approx(0.5));
  // w0 + w1*s = 2 - 1*2 = 0 -> 0.5
  CHECK(logistic_prob(2.0, {2.0, -1.0}) == doctest::Approx(0.5));
  // Strong negative exponent saturates towards 1.
  CHECK(logistic_prob(50.0, {0.0, -1.0}) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(logistic_prob(50.0, {0.0, 1.0}) == doctest::Approx(0.0).epsilon(1e-9));
  // Monotone decreasing in w0.
  CHECK(logistic_prob(1.0, {1.0, -1.0}) > logistic_prob(1.0, {2.0, -1.0}));
}

TEST_CASE("fit_logistic") {
  SUBCASE("uninformative data gives a near-flat model") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> s;
    std::vector<std::uint8_t> y;
    for (int i = 0; i < 10000; ++i) {
      s.push_back(uni(rng));
      y.push_back(static_cast<std::uint8_t>(i % 2));
    }
    const LogisticParams p = fit_logistic(s, y);
    CHECK(std::abs(p.w1) < 0.1);
    for (double v : {0.0, 0.5, 1.0})
      CHECK(logistic_prob(v, p) == doctest::Approx(0.5).epsilon(0.05));
  }

  SUBCASE("separable data: boundaries map above 0.5, rest below") {
    std::vector<double> s;
    std::vector<std::uint8_t> y;
    for (int i = 0; i < 200; ++i) {
      s.push_back(0.1 + 0.001 * i);
      y.push_back(0);
      s.push_back(0.9 + 0.001 * i);
      y.push_back(1);
    }
    const LogisticParams p = fit_logistic(s, y);
    CHECK(std::isfinite(p.w0));
    CHECK(std::isfinite(p.w1));
    CHECK(p.w1 < 0.0);
    CHECK(logistic_prob(0.95, p) > 0.9);
    CHECK(logistic_prob(0.05, p) < 0.1);
  }

  SUBCASE("duplicating the dataset leaves the fit unchanged") {
    std::mt19937 rng(9);
    std::normal_distribution<double> g(0.0, 0.3);
    std::vector<double> s;
    std::vector<std::uint8_t> y;
    for (int i = 0; i < 500; ++i) {
      const int label = i % 3 == 0;
      s.push_back((label ? 1.0 : 0.3) + g(rng));
      y.push_back(static_cast<std::uint8_t>(label));
    }
    const LogisticParams p1 = fit_logistic(s, y);
    std::vector<double> s2 = s;
    std::vector<std::uint8_t> y2 = y;
    s2.insert(s2.end(), s.begin(), s.end());
    y2.insert(y2.end(), y.begin(), y.end());
    const LogisticParams p2 = fit_logistic(s2, y2);
    CHECK(p1.w0 == doctest::Approx(p2.w0).epsilon(1e-3));
    CHECK(p1.w1 == doctest::Approx(p2.w1).epsilon(1e-3));
  }

  SUBCASE("single-class input is rejected") {
    CHECK_THROWS(fit_logistic({0.1, 0.2, 0.3}, {1, 1, 1}));
    CHECK_THROWS(fit_logistic({0.1, 0.2, 0.3}, {0, 0, 0}));
  }
}

namespace {

RawBoundaryMap ridge_map(int w, int h, int col, double peak, double shoulder) {
  RawBoundaryMap map(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      if (x == col)
        map.strength[i] = peak;
      else if (std::abs(x - col) == 1)
        map.strength[i] = shoulder;
      map.orientation[i] = 0.0;  // normal along +x
      map.degenerate[i] = 0;
    }
  return map;
}

}  // namespace

TEST_CASE("nms") {
  SUBCASE("an ideal 1-pixel ridge is unchanged") {
    const auto map = ridge_map(11, 7, 5, 1.0, 0.0);
    const auto thin = nms(map);
    CHECK(thin == map.strength);
  }

  SUBCASE("a 3-wide ramp keeps only its crest") {
    const auto map = ridge_map(11, 7, 5, 1.0, 0.6);
    const auto thin = nms(map);
    for (int y = 0; y < 7; ++y)
      for (int x = 0; x < 11; ++x)
        CHECK(thin[y * 11 + x] == doctest::Approx(x == 5 ? 1.0 : 0.0));
  }

  SUBCASE("plateau survives under the >= rule") {
    RawBoundaryMap map(9, 5);
    for (int y = 0; y < 5; ++y)
      for (int x = 3; x <= 5; ++x) map.strength[y * 9 + x] = 1.0;
    const auto thin = nms(map);
    for (int y = 0; y < 5; ++y)
      for (int x = 3; x <= 5; ++x) CHECK(thin[y * 9 + x] == 1.0);
  }

  SUBCASE("nms is idempotent") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    RawBoundaryMap map(20, 14);
    for (auto& v : map.strength) v = uni(rng);
    for (auto& o : map.orientation) o = uni(rng) * 3.14159;
    const auto once = nms(map);
    const auto twice = nms(once, map);
    CHECK(once == twice);
  }

  SUBCASE("orientation is respected: normal along y keeps a vertical line") {
    // Strength varies along y; with the normal pointing along +y the
    // horizontal crest row survives, all of each vertical line does not.
    RawBoundaryMap map(9, 9);
    for (int y = 0; y < 9; ++y)
      for (int x = 0; x < 9; ++x)
        map.strength[y * 9 + x] = 1.0 - 0.2 * std::abs(y - 4);
    const double half_pi = std::acos(-1.0) / 2.0;
    for (auto& o : map.orientation) o = half_pi;
    const auto thin = nms(map);
    for (int x = 2; x < 7; ++x) {
      CHECK(thin[4 * 9 + x] == doctest::Approx(1.0));
      CHECK(thin[2 * 9 + x] == 0.0);
      CHECK(thin[6 * 9 + x] == 0.0);
    }
  }
}

TEST_CASE("nelder_mead minimizes a smooth bowl") {
  const auto rosenbrock = [](const std::vector<double>& x) {
    const double a = 1.0 - x[0], b = x[1] - x[0] * x[0];
    return a * a + 100.0 * b * b;
  };
  NelderMeadOptions opt;
  opt.max_evaluations = 2000;
  const auto r = nelder_mead(rosenbrock, {-1.0, 1.0}, opt);
  CHECK(r.value < 1e-4);
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(0.02));

  const auto quad = [](const std::vector<double>& x) {
    return (x[0] - 3.0) * (x[0] - 3.0) + 2.0;
  };
  const auto q = nelder_mead(quad, {0.0});
  CHECK(q.x[0] == doctest::Approx(3.0).epsilon(1e-3));
  CHECK(q.value == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(q.evaluations <= 200);
}

namespace {

TrainSample make_step_sample(int w, int h, double contrast, double noise,
                             unsigned seed) {
  TrainSample sample;
  sample.stack = LayerStack(w, h, 1);
  std::mt19937 rng(seed);
  std::normal_distribution<double> g(0.0, noise);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      sample.stack.layer(0)[y * w + x] =
          (x > w / 2 ? contrast : 0.0) + (noise > 0 ? g(rng) : 0.0);
  sample.gt.assign(static_cast<std::size_t>(w) * h, 0);
  for (int y = 0; y < h; ++y) sample.gt[y * w + w / 2] = 1;
  return sample;
}

}  // namespace

TEST_CASE("learn_layer_scales") {
  SUBCASE("single layer needs no search") {
    const auto sample = make_step_sample(32, 24, 1.0, 0.0, 1);
    const auto gamma =
        learn_layer_scales({sample}, DetectorKind::Gb2, GbConfig::with_radius(2));
    REQUIRE(gamma.size() == 1);
    CHECK(gamma[0] == doctest::Approx(1.0));
  }

  SUBCASE("pure-noise layer is strongly down-weighted") {
    // Layer 0: clean step matching gt. Layer 1: strong noise, no signal.
    std::vector<TrainSample> train;
    for (unsigned s = 1; s <= 2; ++s) {
      TrainSample base = make_step_sample(48, 32, 1.0, 0.0, s);
      TrainSample sample;
      sample.stack = LayerStack(48, 32, 2);
      sample.gt = base.gt;
      std::mt19937 rng(100 + s);
      std::normal_distribution<double> g(0.0, 1.0);
      for (int i = 0; i < 48 * 32; ++i) {
        sample.stack.layer(0)[i] = base.stack.layer(0)[i];
        sample.stack.layer(1)[i] = g(rng);
      }
      train.push_back(std::move(sample));
    }
    const auto gamma = learn_layer_scales(train, DetectorKind::Gb2,
                                          GbConfig::with_radius(2));
    REQUIRE(gamma.size() == 2);
    const double top = std::max(gamma[0], gamma[1]);
    CHECK(top == doctest::Approx(1.0));  // normalized
    CHECK(gamma[0] == doctest::Approx(1.0));
    CHECK(gamma[1] / gamma[0] < 0.5);
  }

  SUBCASE("duplicate layers keep finite scales") {
    TrainSample base = make_step_sample(32, 24, 1.0, 0.05, 3);
    TrainSample sample;
    sample.stack = LayerStack(32, 24, 2);
    sample.gt = base.gt;
    for (int i = 0; i < 32 * 24; ++i) {
      sample.stack.layer(0)[i] = base.stack.layer(0)[i];
      sample.stack.layer(1)[i] = base.stack.layer(0)[i];
    }
    const auto gamma = learn_layer_scales({sample}, DetectorKind::Gb2,
                                          GbConfig::with_radius(2));
    REQUIRE(gamma.size() == 2);
    for (double g : gamma) {
      CHECK(std::isfinite(g));
      CHECK(g > 0.0);
      CHECK(g <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("trained parameter files round-trip") {
  namespace fs = std::filesystem;
  const fs::path path =
      fs::temp_directory_path() /
      ("gbparams_" + std::to_string(std::random_device{}()) + ".txt");
  TrainedParams params;
  params.logistic = {1.25, -3.5};
  params.gamma = {1.0, 0.25, 0.7071};
  write_params(path.string(), params);
  const TrainedParams back = read_params(path.string());
  CHECK(back.logistic.w0 == doctest::Approx(1.25));
  CHECK(back.logistic.w1 == doctest::Approx(-3.5));
  REQUIRE(back.gamma.size() == 3);
  CHECK(back.gamma[1] == doctest::Approx(0.25));
  fs::remove(path);

  CHECK_THROWS(read_params((fs::temp_directory_path() / "missing.txt").string()));
}
