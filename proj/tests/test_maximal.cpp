#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "osw/maximal.hpp"
#include "test_support.hpp"

using namespace osw;

namespace {

GridFunction random_grid(test::Rng& rng, std::size_t n) {
  // mixed regimes: smooth positives, signed, sparse with zeros, wild scales
  switch (rng.index(4)) {
    case 0: return GridFunction(0.0, 1.0, rng.uniform_vec(n, 0.0, 1.0));
    case 1: return GridFunction(0.0, 1.0, rng.uniform_vec(n, -5.0, 5.0));
    case 2: {
      std::vector<double> v(n, 0.0);
      for (std::size_t k = 0; k < n / 4 + 1; ++k) v[rng.index(n)] = rng.uniform(0.0, 100.0);
      return GridFunction(0.0, 1.0, v);
    }
    default: {
      std::vector<double> v(n);
      for (double& x : v) x = rng.uniform(-1.0, 1.0) * std::pow(10.0, rng.uniform(-8.0, 8.0));
      return GridFunction(0.0, 1.0, v);
    }
  }
}

}  // namespace

TEST_CASE("plus and minus maximal match the frozen four-cell example") {
  GridFunction f(0.0, 1.0, {0.0, 0.0, 4.0, 0.0});
  GridFunction plus = onesided_max(f, Side::Plus);
  CHECK(plus.values() == std::vector<double>{4.0 / 3.0, 2.0, 4.0, 0.0});
  GridFunction minus = onesided_max(f, Side::Minus);
  CHECK(minus.values() == std::vector<double>{0.0, 0.0, 4.0, 2.0});
}

TEST_CASE("fast maximal equals the window-enumeration oracle bit for bit") {
  test::Rng rng(101);
  for (int rep = 0; rep < 300; ++rep) {
    std::size_t n = 1 + rng.index(64);
    if (rep % 37 == 0) n = 512;
    GridFunction f = random_grid(rng, n);
    for (Side s : {Side::Plus, Side::Minus}) {
      CHECK(onesided_max(f, s).values() == onesided_max_oracle(f, s).values());
    }
  }
}

TEST_CASE("maximal dominates the function and is reflection-dual") {
  test::Rng rng(102);
  for (int rep = 0; rep < 40; ++rep) {
    std::size_t n = 1 + rng.index(96);
    GridFunction f = random_grid(rng, n);
    GridFunction plus = onesided_max(f, Side::Plus);
    GridFunction minus = onesided_max(f, Side::Minus);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(plus[i] >= std::fabs(f[i]));
      CHECK(minus[i] >= std::fabs(f[i]));
    }
    std::vector<double> rev(f.values());
    std::reverse(rev.begin(), rev.end());
    GridFunction fr(f.origin(), f.delta(), rev);
    std::vector<double> dual = onesided_max(fr, Side::Plus).values();
    std::reverse(dual.begin(), dual.end());
    CHECK(minus.values() == dual);
  }
}

TEST_CASE("maximal is monotone, exactly so on dyadic data") {
  test::Rng rng(103);
  for (int rep = 0; rep < 30; ++rep) {
    std::size_t n = 4 + rng.index(60);
    std::vector<double> lo = rng.dyadic_vec(n);
    std::vector<double> hi = lo;
    for (double& v : hi) v += static_cast<double>(rng.index(8)) / 64.0;
    GridFunction flo(0.0, 1.0, lo), fhi(0.0, 1.0, hi);
    for (Side s : {Side::Plus, Side::Minus}) {
      GridFunction mlo = onesided_max(flo, s), mhi = onesided_max(fhi, s);
      for (std::size_t i = 0; i < n; ++i) CHECK(mlo[i] <= mhi[i]);
    }
  }
}

TEST_CASE("maximal is sublinear up to rounding") {
  test::Rng rng(104);
  for (int rep = 0; rep < 30; ++rep) {
    std::size_t n = 2 + rng.index(50);
    GridFunction a(0.0, 1.0, rng.uniform_vec(n, 0.0, 3.0));
    GridFunction b(0.0, 1.0, rng.uniform_vec(n, 0.0, 3.0));
    std::vector<double> sum(n);
    for (std::size_t i = 0; i < n; ++i) sum[i] = a[i] + b[i];
    GridFunction ab(0.0, 1.0, sum);
    for (Side s : {Side::Plus, Side::Minus}) {
      GridFunction ma = onesided_max(a, s), mb = onesided_max(b, s),
                   mab = onesided_max(ab, s);
      for (std::size_t i = 0; i < n; ++i)
        CHECK(mab[i] <= (ma[i] + mb[i]) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("power variant matches the frozen value and grows with r") {
  GridFunction f(0.0, 1.0, {0.0, 0.0, 4.0, 0.0});
  GridFunction m2 = onesided_max_power(f, Side::Plus, 2.0);
  CHECK(m2[0] == std::pow(16.0 / 3.0, 0.5));
  CHECK(m2[0] == doctest::Approx(std::sqrt(16.0 / 3.0)).epsilon(1e-15));
  CHECK_THROWS_AS(onesided_max_power(f, Side::Plus, 0.9), std::domain_error);

  // cross-r comparison mixes prefixes of |f| and |f|^r, so absolute noise
  // ~ n*eps*sum|f|^r differs per side; a single value scale keeps it relative
  test::Rng rng(105);
  for (int rep = 0; rep < 20; ++rep) {
    std::size_t n = 2 + rng.index(40);
    GridFunction g(0.0, 1.0, rng.uniform_vec(n, 0.25, 4.0));
    GridFunction m1 = onesided_max_power(g, Side::Plus, 1.0);
    GridFunction mr = onesided_max_power(g, Side::Plus, 2.0);
    GridFunction ms = onesided_max_power(g, Side::Plus, 3.0);
    CHECK(m1.values() == onesided_max(g, Side::Plus).values());
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(m1[i] <= mr[i] * (1.0 + 1e-12));
      CHECK(mr[i] <= ms[i] * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("weighted maximal with unit measure reproduces the plain one") {
  test::Rng rng(106);
  for (int rep = 0; rep < 40; ++rep) {
    std::size_t n = 1 + rng.index(64);
    GridFunction f = random_grid(rng, n);
    Weight ones(f.origin(), f.delta(), std::vector<double>(n, 1.0));
    for (Side s : {Side::Plus, Side::Minus}) {
      CHECK(onesided_max_weighted(f, ones, s).values() == onesided_max(f, s).values());
    }
  }
}

TEST_CASE("weighted maximal equals a literal enumeration") {
  test::Rng rng(107);
  for (int rep = 0; rep < 60; ++rep) {
    std::size_t n = 1 + rng.index(48);
    GridFunction f = random_grid(rng, n);
    Weight g(0.0, 1.0, rng.uniform_vec(n, 0.1, 4.0));
    for (Side side : {Side::Plus, Side::Minus}) {
      GridFunction fast = onesided_max_weighted(f, g, side);
      // brute force with the same reversed prefix-sum evaluation order
      std::vector<double> a(f.values()), gv(g.values());
      for (double& v : a) v = std::fabs(v);
      if (side == Side::Minus) {
        std::reverse(a.begin(), a.end());
        std::reverse(gv.begin(), gv.end());
      }
      std::vector<double> G(n + 1, 0.0), Q(n + 1, 0.0);
      for (std::size_t k = 0; k < n; ++k) {
        G[k + 1] = G[k] + gv[k];
        Q[k + 1] = Q[k] + a[k] * gv[k];
      }
      std::vector<double> expect(n);
      for (std::size_t i = 0; i < n; ++i) {
        double best = a[i];
        for (std::size_t j = i + 1; j <= n; ++j) {
          double cand = (Q[j] - Q[i]) / (G[j] - G[i]);
          if (cand > best) best = cand;
        }
        expect[i] = best;
      }
      if (side == Side::Minus) std::reverse(expect.begin(), expect.end());
      CHECK(fast.values() == expect);
    }
  }
}

TEST_CASE("zero padding never changes maximal values on original cells") {
  test::Rng rng(108);
  for (int rep = 0; rep < 30; ++rep) {
    std::size_t n = 1 + rng.index(60);
    GridFunction f = random_grid(rng, n);
    GridFunction padded = pad_zero(f, 7, 5);
    for (Side s : {Side::Plus, Side::Minus}) {
      GridFunction m = onesided_max(f, s);
      GridFunction mp = onesided_max(padded, s);
      for (std::size_t i = 0; i < n; ++i) CHECK(mp[i + 7] == m[i]);
    }
  }
}
