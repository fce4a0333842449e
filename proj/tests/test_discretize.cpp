#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstddef>
#include <vector>

#include "ordepth/discretize.hpp"
#include "ordepth/rng.hpp"

using namespace ordepth;

namespace {

DiscretizationSpec default_spec(DiscretizationScheme scheme =
                                    DiscretizationScheme::exponential_inverse,
                                std::size_t classes = 128) {
  DiscretizationSpec s;
  s.min_depth_m = 2.0;
  s.max_depth_m = 80.0;
  s.class_count = classes;
  s.scheme = scheme;
  return s;
}

// Oracle: boundary formula evaluated in extended precision.
long double boundary_oracle_exp(long double dmin, long double dmax,
                                std::size_t m, std::size_t i) {
  const long double rmin = 1.0L / dmax;
  const long double rmax = 1.0L / dmin;
  return rmin * std::exp(std::log(rmax / rmin) *
                         static_cast<long double>(i - 1) /
                         static_cast<long double>(m - 1));
}

// Oracle: exhaustive scan for the boundary nearest in log inverse depth.
std::size_t nearest_class_oracle(const Tensor& boundaries, double depth) {
  double best = 1e300;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < boundaries.size(); ++i) {
    double dist = std::abs(std::log(1.0 / depth) - std::log(boundaries[i]));
    if (dist < best) {
      best = dist;
      best_i = i;
    }
  }
  return best_i + 1;
}

double kl_vs_uniform(const Tensor& hist) {
  const double m = static_cast<double>(hist.size());
  double kl = 0.0;
  for (std::size_t i = 0; i < hist.size(); ++i)
    if (hist[i] > 0.0) kl += hist[i] * std::log(hist[i] * m);
  return kl;
}

}  // namespace

TEST_CASE("boundary endpoints are exact for the default spec") {
  auto spec = default_spec();
  Tensor c = class_boundaries(spec);
  REQUIRE(c.size() == 128);
  CHECK(c[0] == 1.0 / 80.0);
  CHECK(c[127] == 0.5);
}

TEST_CASE("interior boundaries match the extended-precision oracle") {
  auto spec = default_spec();
  Tensor c = class_boundaries(spec);
  for (std::size_t i : {std::size_t{2}, std::size_t{37}, std::size_t{64},
                        std::size_t{65}, std::size_t{100}, std::size_t{127}}) {
    long double expect = boundary_oracle_exp(2.0L, 80.0L, 128, i);
    double rel = std::abs(static_cast<long double>(c[i - 1]) - expect) / expect;
    CHECK(rel < 1e-12);
  }
}

TEST_CASE("boundaries strictly increase for every scheme") {
  for (auto scheme : {DiscretizationScheme::exponential_inverse,
                      DiscretizationScheme::linear_depth,
                      DiscretizationScheme::linear_inverse}) {
    for (std::size_t m : {std::size_t{2}, std::size_t{3}, std::size_t{96},
                          std::size_t{128}, std::size_t{160}}) {
      Tensor c = class_boundaries(default_spec(scheme, m));
      for (std::size_t i = 1; i < c.size(); ++i) CHECK(c[i] > c[i - 1]);
    }
  }
}

TEST_CASE("schemes agree at two classes") {
  for (auto scheme : {DiscretizationScheme::exponential_inverse,
                      DiscretizationScheme::linear_depth,
                      DiscretizationScheme::linear_inverse}) {
    Tensor c = class_boundaries(default_spec(scheme, 2));
    CHECK(c[0] == 1.0 / 80.0);
    CHECK(c[1] == 0.5);
  }
}

TEST_CASE("invalid specs are rejected") {
  DiscretizationSpec s = default_spec();
  s.class_count = 1;
  CHECK_THROWS_AS(class_boundaries(s), ArgumentError);
  s = default_spec();
  s.min_depth_m = -1.0;
  CHECK_THROWS_AS(class_boundaries(s), ArgumentError);
  s = default_spec();
  s.min_depth_m = 90.0;
  CHECK_THROWS_AS(class_boundaries(s), ArgumentError);
}

TEST_CASE("class_of_depth hits exact boundaries and clamps") {
  auto spec = default_spec();
  CHECK(class_of_depth(spec, 80.0) == 1);
  CHECK(class_of_depth(spec, 2.0) == 128);
  CHECK(class_of_depth(spec, 0.5) == 128);    // clamped near
  CHECK(class_of_depth(spec, 500.0) == 1);    // clamped far
  CHECK_THROWS_AS(class_of_depth(spec, 0.0), ArgumentError);
  CHECK_THROWS_AS(class_of_depth(spec, -3.0), ArgumentError);
}

TEST_CASE("class_of_depth matches exhaustive nearest-boundary scan") {
  auto spec = default_spec();
  Tensor c = class_boundaries(spec);
  CHECK(class_of_depth(spec, 13.7) == nearest_class_oracle(c, 13.7));
  Rng rng(2024);
  for (int i = 0; i < 500; ++i) {
    double d = rng.uniform(2.0, 80.0);
    CHECK(class_of_depth(spec, d) == nearest_class_oracle(c, d));
  }
}

TEST_CASE("depth_of_class inverts boundaries and round-trips") {
  auto spec = default_spec();
  CHECK(depth_of_class(spec, 1) == 80.0);
  CHECK(depth_of_class(spec, 128) == 2.0);
  CHECK_THROWS_AS(depth_of_class(spec, 0), ArgumentError);
  CHECK_THROWS_AS(depth_of_class(spec, 129), ArgumentError);
  for (auto scheme : {DiscretizationScheme::exponential_inverse,
                      DiscretizationScheme::linear_depth,
                      DiscretizationScheme::linear_inverse}) {
    auto s = default_spec(scheme);
    for (std::size_t i = 1; i <= s.class_count; ++i)
      CHECK(class_of_depth(s, depth_of_class(s, i)) == i);
  }
}

TEST_CASE("quantization error is bounded by half a log step") {
  auto spec = default_spec();
  const double half_step =
      0.5 * std::log(spec.rho_max() / spec.rho_min()) /
      static_cast<double>(spec.class_count - 1);
  Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    double d = rng.uniform(2.0, 80.0);
    std::size_t k = class_of_depth(spec, d);
    double err = std::abs(std::log(1.0 / d) - std::log(class_boundary(spec, k)));
    CHECK(err <= half_step * (1.0 + 1e-12));
  }
}

TEST_CASE("class_histogram basics") {
  auto spec = default_spec();
  Tensor depths(Shape{4, 4}, 80.0);
  Tensor mask(Shape{4, 4}, 1.0);
  Tensor h = class_histogram(spec, depths, mask);
  CHECK(h[0] == 1.0);
  for (std::size_t i = 1; i < h.size(); ++i) CHECK(h[i] == 0.0);

  Tensor empty_mask(Shape{4, 4}, 0.0);
  Tensor hz = class_histogram(spec, depths, empty_mask);
  for (std::size_t i = 0; i < hz.size(); ++i) CHECK(hz[i] == 0.0);

  Tensor bad_mask(Shape{2, 2}, 1.0);
  CHECK_THROWS_AS(class_histogram(spec, depths, bad_mask), ShapeError);
}

TEST_CASE("histogram sums to one over valid pixels") {
  auto spec = default_spec();
  Rng rng(9);
  Tensor depths = rng_uniform(rng, {32, 32}, 2.0, 80.0);
  Tensor mask(Shape{32, 32});
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = rng.bernoulli(0.6);
  Tensor h = class_histogram(spec, depths, mask);
  CHECK(pairwise_sum(h) == Catch::Approx(1.0).margin(1e-12));
}

// Depths drawn with density proportional to 1/d^2 (inverse depth uniform)
// have a flatter class histogram under the exponential scheme than under
// linear-depth binning.
TEST_CASE("exponential binning flattens a 1/d^2 depth population") {
  const std::size_t n = 1000000;
  Rng rng(31337);
  Tensor depths(Shape{n});
  for (std::size_t i = 0; i < n; ++i)
    depths[i] = 1.0 / rng.uniform(1.0 / 80.0, 0.5);
  Tensor mask(Shape{n}, 1.0);

  double kl_exp = kl_vs_uniform(class_histogram(
      default_spec(DiscretizationScheme::exponential_inverse), depths, mask));
  double kl_lin = kl_vs_uniform(class_histogram(
      default_spec(DiscretizationScheme::linear_depth), depths, mask));
  INFO("kl_exp=" << kl_exp << " kl_lin=" << kl_lin);
  CHECK(kl_exp < kl_lin);
  CHECK(kl_exp >= 0.0);
}
