#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "erpic/bspline.hpp"
#include "erpic/errors.hpp"

using namespace erpic;

namespace {

// Independent oracle: centered cardinal B-spline by the Cox-de Boor style
// convolution recursion. M_1 is the indicator of [-1/2,1/2); M_{n} has
// support [-n/2, n/2]. The degree-5 kernel is M_6.
double cardinal_bspline(int n, double x) {
  if (n == 1) return (x >= -0.5 && x < 0.5) ? 1.0 : 0.0;
  const double a = (x + 0.5 * n) / (n - 1);
  const double b = (0.5 * n - x) / (n - 1);
  return a * cardinal_bspline(n - 1, x + 0.5) + b * cardinal_bspline(n - 1, x - 0.5);
}

}  // namespace

TEST_CASE("quintic weights match the Cox-de Boor recursion") {
  // node offsets relative to the particle are m - s for m = -2..3
  for (double s : {0.25, 0.0, 0.1, 0.37, 0.9, 0.999}) {
    const auto w = bspline_weights(s);
    for (int m = -2; m <= 3; ++m) {
      const double expected = cardinal_bspline(6, m - s);
      CHECK(w[static_cast<std::size_t>(m + 2)] == doctest::Approx(expected).epsilon(1e-14));
    }
  }
}

TEST_CASE("partition of unity over 1e4 random offsets") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    double s = dist(gen);
    if (s >= 1.0) s = 0.0;
    const auto w = bspline_weights(s);
    double sum = 0.0;
    for (double v : w) {
      CHECK(v >= 0.0);
      sum += v;
    }
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  CHECK(worst <= 1e-14);
}

TEST_CASE("s = 0 weights are symmetric about the central node") {
  const auto w = bspline_weights(0.0);
  // mirror values come from different polynomial pieces: equal to rounding
  CHECK(w[0] == doctest::Approx(w[4]).epsilon(1e-15));
  CHECK(w[1] == doctest::Approx(w[3]).epsilon(1e-15));
  CHECK(w[5] == 0.0);
  CHECK(w[2] == doctest::Approx(11.0 / 20.0).epsilon(1e-16));
  double sum = 0.0;
  for (double v : w) sum += v;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("kernel evenness: weights reverse under s -> 1-s") {
  for (double s : {0.1, 0.25, 0.37, 0.9}) {
    const auto w = bspline_weights(s);
    const auto r = bspline_weights(1.0 - s);
    for (int i = 0; i < 6; ++i) {
      CHECK(w[static_cast<std::size_t>(i)] ==
            doctest::Approx(r[static_cast<std::size_t>(5 - i)]).epsilon(1e-15));
    }
  }
}

TEST_CASE("offset outside [0,1) is rejected") {
  CHECK_THROWS_AS(bspline_weights(-0.1), ConfigError);
  CHECK_THROWS_AS(bspline_weights(1.0), ConfigError);
  CHECK_THROWS_AS(bspline_weights(std::nan("")), ConfigError);
}
