#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "gb/pca.hpp"
#include "gb/softseg.hpp"
#include "oracles.hpp"

using namespace gb;

namespace {

LayerStack color_image(int w, int h,
                       const std::function<std::array<double, 3>(int, int)>& f) {
  LayerStack img(w, h, 3);
  img.names = {"c0", "c1", "c2"};
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const auto c = f(x, y);
      for (int k = 0; k < 3; ++k)
        img.layer(k)[static_cast<std::size_t>(y) * w + x] = c[k];
    }
  return img;
}

int count_nonzero(const std::vector<std::uint8_t>& v) {
  return static_cast<int>(std::count_if(v.begin(), v.end(),
                                        [](std::uint8_t b) { return b != 0; }));
}

}  // namespace

TEST_CASE("color quantizer") {
  ColorQuantizer q;
  CHECK(q.bin_count() == 512);
  // Bins partition [0,1]^3 into an 8x8x8 grid; corners map to the ends.
  CHECK(q.bin_of(0.0, 0.0, 0.0) == 0);
  CHECK(q.bin_of(1.0, 1.0, 1.0) == 511);
  // Channel order: two colors differing only in the last channel land in
  // adjacent-by-stride bins.
  const int b0 = q.bin_of(0.5, 0.5, 0.01);
  const int b1 = q.bin_of(0.5, 0.5, 0.99);
  CHECK(b0 != b1);
  // Out-of-range values clamp instead of overflowing.
  CHECK(q.bin_of(-3.0, 2.0, 0.5) >= 0);
  CHECK(q.bin_of(-3.0, 2.0, 0.5) < 512);
}

TEST_CASE("patch indicator") {
  ColorQuantizer q;

  SUBCASE("constant patch has exactly one active bin") {
    const auto img = color_image(8, 8, [](int, int) {
      return std::array<double, 3>{0.3, 0.3, 0.3};
    });
    const auto ind = patch_indicator(img, 4, 4, 2, q);
    REQUIRE(static_cast<int>(ind.size()) == q.bin_count());
    CHECK(count_nonzero(ind) == 1);
    CHECK(ind[q.bin_of(0.3, 0.3, 0.3)] == 1);
  }

  SUBCASE("two-color patch activates two bins") {
    const auto img = color_image(8, 8, [](int x, int) {
      return x < 4 ? std::array<double, 3>{0.1, 0.1, 0.1}
                   : std::array<double, 3>{0.9, 0.9, 0.9};
    });
    const auto ind = patch_indicator(img, 3, 4, 2, q);  // straddles the edge
    CHECK(count_nonzero(ind) == 2);
  }

  SUBCASE("checkerboard of four colors activates four bins") {
    const auto img = color_image(8, 8, [](int x, int y) {
      const double a = (x % 2) ? 0.9 : 0.1;
      const double b = (y % 2) ? 0.9 : 0.1;
      return std::array<double, 3>{a, b, 0.5};
    });
    const auto ind = patch_indicator(img, 4, 4, 2, q);
    CHECK(count_nonzero(ind) == 4);
  }

  SUBCASE("corner patches clip to the image") {
    const auto img = color_image(4, 4, [](int x, int y) {
      return std::array<double, 3>{x / 4.0, y / 4.0, 0.5};
    });
    CHECK_NOTHROW(patch_indicator(img, 0, 0, 2, q));
    CHECK_NOTHROW(patch_indicator(img, 3, 3, 2, q));
  }
}

TEST_CASE("fit_pca matches an independent eigensolver") {
  std::mt19937 rng(21);
  std::normal_distribution<double> gauss;
  const int n = 40, dim = 6, d = 3;
  std::vector<std::vector<double>> samples(n, std::vector<double>(dim));
  for (auto& s : samples)
    for (double& v : s) v = gauss(rng);

  const Pca pca = fit_pca(samples, d);
  REQUIRE(static_cast<int>(pca.components.size()) == d);

  // Oracle: dense covariance + orthogonal subspace iteration.
  std::vector<double> mean(dim, 0.0);
  for (const auto& s : samples)
    for (int j = 0; j < dim; ++j) mean[j] += s[j] / n;
  // Population covariance (1/n), matching the library's convention.
  std::vector<double> cov(dim * dim, 0.0);
  for (const auto& s : samples)
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        cov[i * dim + j] += (s[i] - mean[i]) * (s[j] - mean[j]) / n;
  std::vector<double> evals;
  std::vector<std::vector<double>> evecs;
  oracle::top_eigenpairs(cov, dim, d, evals, evecs);

  for (int k = 0; k < d; ++k) {
    CHECK(pca.variances[k] == doctest::Approx(evals[k]).epsilon(1e-6));
    // Compare up to sign.
    double dot = 0.0;
    for (int j = 0; j < dim; ++j) dot += pca.components[k][j] * evecs[k][j];
    CHECK(std::abs(dot) == doctest::Approx(1.0).epsilon(1e-6));
  }

  // Components are orthonormal.
  for (int a = 0; a < d; ++a)
    for (int b = 0; b <= a; ++b) {
      double dot = 0.0;
      for (int j = 0; j < dim; ++j)
        dot += pca.components[a][j] * pca.components[b][j];
      CHECK(dot == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-9));
    }

  // The covariance route and the Gram route agree: shrink the sample
  // count below dim to force the Gram path, then compare on that subset.
  std::vector<std::vector<double>> few(samples.begin(), samples.begin() + 4);
  const Pca gram = fit_pca(few, 2);
  std::vector<double> mean4(dim, 0.0);
  for (const auto& s : few)
    for (int j = 0; j < dim; ++j) mean4[j] += s[j] / 4.0;
  std::vector<double> cov4(dim * dim, 0.0);
  for (const auto& s : few)
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        cov4[i * dim + j] += (s[i] - mean4[i]) * (s[j] - mean4[j]) / 4.0;
  const Pca covroute = fit_pca_from_cov(mean4, cov4, 2);
  for (int k = 0; k < 2; ++k) {
    CHECK(gram.variances[k] == doctest::Approx(covroute.variances[k]).epsilon(1e-8));
    double dot = 0.0;
    for (int j = 0; j < dim; ++j)
      dot += gram.components[k][j] * covroute.components[k][j];
    CHECK(std::abs(dot) == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("fit_color_subspace") {
  ColorQuantizer q;

  SUBCASE("identical samples are degenerate") {
    std::vector<std::uint8_t> ind(q.bin_count(), 0);
    ind[17] = 1;
    const auto sub = fit_color_subspace({ind, ind, ind}, 2);
    CHECK(sub.degenerate());
  }

  SUBCASE("two distinct samples: mean and first direction by hand") {
    std::vector<std::uint8_t> a(8, 0), b(8, 0);
    a[1] = 1;
    b[6] = 1;
    ColorSubspace sub = fit_color_subspace({a, b, a, b}, 1);
    CHECK_FALSE(sub.degenerate());
    CHECK(sub.pca.mean[1] == doctest::Approx(0.5));
    CHECK(sub.pca.mean[6] == doctest::Approx(0.5));
    CHECK(sub.pca.mean[0] == doctest::Approx(0.0));
    // v1 is (a - b)/sqrt(2) up to sign: entries +-1/sqrt(2) at bins 1, 6.
    const auto& v = sub.pca.components[0];
    CHECK(std::abs(v[1]) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(std::abs(v[6]) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(v[1] * v[6] < 0.0);
    CHECK(std::abs(v[3]) < 1e-12);
  }
}

TEST_CASE("figure_ground_score separates a two-color image") {
  ColorQuantizer q;
  const auto img = color_image(10, 6, [](int x, int) {
    return x < 5 ? std::array<double, 3>{0.1, 0.1, 0.1}
                 : std::array<double, 3>{0.9, 0.9, 0.9};
  });
  const auto left = patch_indicator(img, 1, 3, 0, q);
  const auto right = patch_indicator(img, 8, 3, 0, q);
  const auto sub = fit_color_subspace({left, right}, 1);

  SUBCASE("degenerate subspace scores zero") {
    const auto deg = fit_color_subspace({left, left}, 1);
    const auto score = figure_ground_score(img, left, deg, q);
    for (double s : score) CHECK(s == 0.0);
  }

  SUBCASE("signs split by region and flip with the reference patch") {
    const auto s_left = figure_ground_score(img, left, sub, q);
    const auto s_right = figure_ground_score(img, right, sub, q);
    for (int y = 0; y < 6; ++y)
      for (int x = 0; x < 10; ++x) {
        const double sl = s_left[y * 10 + x];
        const double sr = s_right[y * 10 + x];
        if (x < 5) {
          CHECK(sl > 0.0);
          CHECK(sr < 0.0);
        } else {
          CHECK(sl < 0.0);
          CHECK(sr > 0.0);
        }
        CHECK(sl == doctest::Approx(-sr));
      }
  }

  SUBCASE("hand value: +-1/2 for unit indicator pair") {
    const auto score = figure_ground_score(img, left, sub, q);
    CHECK(std::abs(score[0]) == doctest::Approx(0.5));
  }
}

TEST_CASE("soft_segment") {
  SUBCASE("constant image is degenerate with zero layers") {
    const auto img = color_image(40, 30, [](int, int) {
      return std::array<double, 3>{0.4, 0.4, 0.4};
    });
    const auto seg = soft_segment(img, SoftSegConfig{});
    CHECK(seg.degenerate);
    CHECK(seg.width == 40);
    CHECK(seg.height == 30);
    REQUIRE(seg.data.size() == 8u * 40u * 30u);
    for (double v : seg.data) CHECK(v == 0.0);
  }

  SUBCASE("two-region image: a leading layer separates the regions") {
    const auto img = color_image(60, 40, [](int x, int) {
      return x < 30 ? std::array<double, 3>{0.15, 0.2, 0.7}
                    : std::array<double, 3>{0.8, 0.6, 0.1};
    });
    const auto seg = soft_segment(img, SoftSegConfig{});
    CHECK_FALSE(seg.degenerate);
    for (double v : seg.data) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    // Far from the boundary every pixel of a region sees the same patch
    // statistics, so layer values are constant within each region and the
    // normalized first layer hits 0 and 1 on opposite sides.
    const double* l0 = seg.layer(0);
    const double a = l0[20 * 60 + 5];
    const double b = l0[20 * 60 + 55];
    CHECK(std::abs(a - b) == doctest::Approx(1.0));
    CHECK(l0[10 * 60 + 6] == doctest::Approx(a));
    CHECK(l0[30 * 60 + 54] == doctest::Approx(b));
  }

  SUBCASE("layer stack conversion carries size and layer count") {
    const auto img = color_image(24, 18, [](int x, int y) {
      return std::array<double, 3>{(x % 5) / 5.0, (y % 3) / 3.0, 0.5};
    });
    const auto seg = soft_segment(img, SoftSegConfig{});
    const LayerStack stack = to_layer_stack(seg);
    CHECK(stack.width == 24);
    CHECK(stack.height == 18);
    CHECK(stack.layer_count() == 8);
    CHECK(stack.names.size() == 8);
    CHECK_NOTHROW(stack.validate());
  }

  SUBCASE("non-color input is rejected") {
    LayerStack gray(10, 10, 1);
    CHECK_THROWS(soft_segment(gray, SoftSegConfig{}));
  }
}
