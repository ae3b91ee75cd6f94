#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "osw/sio.hpp"
#include "test_support.hpp"

using namespace osw;

namespace {

double dot(const GridFunction& a, const GridFunction& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc * a.delta();
}

GridFunction random_supported(test::Rng& rng, std::size_t n) {
  std::vector<double> v(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    if (rng.unit() < 0.7) v[i] = rng.uniform(-2.0, 2.0);
  return GridFunction(0.0, 1.0, v);
}

}  // namespace

TEST_CASE("default kernel: zero crossings, declared bounds, closed form") {
  KernelSpec k = default_kernel();
  CHECK(k.evaluate(-1.0) == 0.0);
  CHECK(k.evaluate(0.0) == 0.0);
  CHECK(k.evaluate(0.5) == 0.0);
  CHECK(k.evaluate(-std::exp(1.0)) ==
        doctest::Approx(std::sin(1.0) / -std::exp(1.0)).epsilon(1e-15));

  KernelConditionReport rep = kernel_condition_report(k);
  CHECK(rep.pass);
  CHECK(rep.size_max <= 1.0);
  CHECK(rep.size_max > 0.99);
  CHECK(rep.smooth_max <= 8.0);
  CHECK(rep.proxy_max <= 2.0);

  // truncated integrals telescope to cosine differences on decade pairs
  double closed_max = 0.0;
  for (int a = -6; a < 6; ++a)
    for (int b = a + 1; b <= 6; ++b) {
      double lo = std::log(std::pow(10.0, a));
      double hi = std::log(std::pow(10.0, b));
      closed_max = std::max(closed_max, std::fabs(std::cos(hi) - std::cos(lo)));
    }
  CHECK(test::close_rel(rep.proxy_max, closed_max, 1e-6));
}

TEST_CASE("reciprocal kernel is the negative control: bounded yet divergent") {
  KernelConditionReport rep = kernel_condition_report(reciprocal_kernel());
  CHECK(rep.size_pass);
  CHECK(rep.size_max <= 1.0 + 1e-12);
  CHECK(rep.smooth_pass);
  CHECK_FALSE(rep.proxy_pass);
  CHECK_FALSE(rep.pass);
  // integral over (-10^6, -10^-6) is 12 ln 10
  CHECK(test::close_rel(rep.proxy_max, 12.0 * std::log(10.0), 1e-6));
}

TEST_CASE("identically zero kernel reports zero maxima and passes") {
  KernelSpec zero;
  zero.evaluate = [](double) { return 0.0; };
  zero.c2 = 1.0;
  zero.c3 = 1.0;
  zero.c1_proxy = 1.0;
  zero.name = "zero";
  KernelSampleSpec small;
  small.t_count = 2000;
  KernelConditionReport rep = kernel_condition_report(zero, small);
  CHECK(rep.size_max == 0.0);
  CHECK(rep.smooth_max == 0.0);
  CHECK(rep.proxy_max == 0.0);
  CHECK(rep.pass);
}

TEST_CASE("truncated transform pins closed-form stencil values") {
  KernelSpec k = reciprocal_kernel();
  GridFunction f(0.0, 1.0, {1.0, 0.0, 0.0});
  GridFunction plus = truncated_transform(f, k, 0.5, Side::Plus);
  CHECK(test::close_rel(plus[0], -std::log(2.0), 1e-9));
  CHECK(plus[1] == 0.0);
  CHECK(plus[2] == 0.0);
  GridFunction minus = truncated_transform(f, k, 0.5, Side::Minus);
  CHECK(test::close_rel(minus[0], -std::log(2.0), 1e-9));
  CHECK(test::close_rel(minus[1], -std::log(2.0), 1e-9));
  CHECK(test::close_rel(minus[2], -std::log(1.5), 1e-9));

  CHECK_THROWS_AS(truncated_transform(f, k, 0.49, Side::Plus),
                  precondition_error);
}

TEST_CASE("truncated transform is linear, translation-covariant, one-sided") {
  KernelSpec k = default_kernel();
  test::Rng rng(401);
  for (int rep = 0; rep < 8; ++rep) {
    std::size_t n = 8 + rng.index(56);
    GridFunction a = random_supported(rng, n);
    GridFunction b = random_supported(rng, n);
    double al = rng.uniform(-2.0, 2.0), be = rng.uniform(-2.0, 2.0);
    std::vector<double> mix(n);
    for (std::size_t i = 0; i < n; ++i) mix[i] = al * a[i] + be * b[i];
    for (Side s : {Side::Plus, Side::Minus}) {
      GridFunction ta = truncated_transform(a, k, 0.75, s);
      GridFunction tb = truncated_transform(b, k, 0.75, s);
      GridFunction tm =
          truncated_transform(GridFunction(0.0, 1.0, mix), k, 0.75, s);
      for (std::size_t i = 0; i < n; ++i)
        CHECK(std::fabs(tm[i] - (al * ta[i] + be * tb[i])) <=
              1e-11 * (1.0 + std::fabs(tm[i])));
    }
    GridFunction shifted(17.5, 1.0, a.values());
    CHECK(truncated_transform(shifted, k, 0.75, Side::Plus).values() ==
          truncated_transform(a, k, 0.75, Side::Plus).values());
  }

  GridFunction zero(0.0, 1.0, std::vector<double>(32, 0.0));
  CHECK(truncated_transform(zero, k, 0.5, Side::Plus).values() ==
        std::vector<double>(32, 0.0));

  // support on the wrong side contributes nothing, exactly
  std::vector<double> left(24, 0.0);
  for (std::size_t i = 0; i < 8; ++i) left[i] = 1.0 + double(i);
  GridFunction fl(0.0, 1.0, left);
  GridFunction tp = truncated_transform(fl, k, 0.5, Side::Plus);
  for (std::size_t i = 8; i < 24; ++i) CHECK(tp[i] == 0.0);
  std::vector<double> right(24, 0.0);
  for (std::size_t i = 16; i < 24; ++i) right[i] = 2.0;
  GridFunction fr(0.0, 1.0, right);
  GridFunction tmn = truncated_transform(fr, k, 0.5, Side::Minus);
  for (std::size_t i = 0; i < 16; ++i) CHECK(tmn[i] == 0.0);
}

TEST_CASE("plus and minus transforms are adjoint to summation rounding") {
  KernelSpec k = default_kernel();
  test::Rng rng(402);
  for (int rep = 0; rep < 40; ++rep) {
    std::size_t n = 4 + rng.index(60);
    GridFunction f = random_supported(rng, n);
    GridFunction g = random_supported(rng, n);
    double eps = 0.5 + rng.unit() * 2.0;
    double lhs = dot(truncated_transform(f, k, eps, Side::Plus), g);
    double rhs = dot(f, truncated_transform(g, k, eps, Side::Minus));
    CHECK(std::fabs(lhs - rhs) <= 1e-11 * (1.0 + std::fabs(lhs)));
  }
}

TEST_CASE("maximal transform dominates truncations and decays like mass/dist") {
  KernelSpec k = default_kernel();
  test::Rng rng(403);
  std::vector<double> grid = {0.5, 1.0, 2.0, 4.0};
  for (int rep = 0; rep < 6; ++rep) {
    std::size_t n = 12 + rng.index(52);
    GridFunction f = random_supported(rng, n);
    GridFunction star = maximal_transform(f, k, grid);
    GridFunction smallest = maximal_transform(f, k, {grid.front()});
    for (double eps : grid) {
      GridFunction te = truncated_transform(f, k, eps, Side::Plus);
      GridFunction one = maximal_transform(f, k, {eps});
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(star[i] >= std::fabs(te[i]) * (1.0 - 1e-8) - 1e-12);
        CHECK(star[i] >= one[i] * (1.0 - 1e-9) - 1e-12);
        CHECK(smallest[i] >= one[i] * (1.0 - 1e-9) - 1e-12);
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      CHECK(star[i] <= smallest[i] * (1.0 + 1e-9) + 1e-12);
  }

  GridFunction zero(0.0, 1.0, std::vector<double>(16, 0.0));
  CHECK(maximal_transform(zero, k, {0.5}).values() ==
        std::vector<double>(16, 0.0));
  CHECK_THROWS_AS(maximal_transform(zero, k, {}), precondition_error);
  CHECK_THROWS_AS(maximal_transform(zero, k, {1.0, 0.5}), precondition_error);
  CHECK_THROWS_AS(maximal_transform(zero, k, {0.25}), precondition_error);

  std::vector<double> point(256, 0.0);
  point.back() = 1.0;
  GridFunction pm(0.0, 1.0, point);
  GridFunction star = maximal_transform(pm, k, {0.5});
  double peak = 0.0;
  for (std::size_t i = 0; i + 1 < 256; ++i) {
    std::size_t d = 255 - i;
    if (d >= 4) CHECK(star[i] <= k.c2 / static_cast<double>(d) * (1.0 + 1e-8));
    peak = std::max(peak, star[i]);
  }
  CHECK(peak > 0.0);
}
