#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "osw/weights.hpp"
#include "test_support.hpp"

using namespace osw;

namespace {

Weight random_weight(test::Rng& rng, std::size_t n) {
  return Weight(0.0, 1.0, rng.dyadic_vec(n));
}

Weight reversed(const Weight& w) {
  std::vector<double> v(w.values());
  std::reverse(v.begin(), v.end());
  return Weight(w.origin(), w.delta(), std::move(v));
}

// Independent literal enumeration over all boundary triples, same prefix
// arithmetic as the library so agreement is exact.
WeightClassReport ap_oracle(const Weight& w, double p, Side side) {
  const std::size_t n = w.size();
  std::vector<double> pw(n + 1, 0.0), ps(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    pw[i + 1] = pw[i] + w[i];
    ps[i + 1] = ps[i] + std::pow(w[i], -1.0 / (p - 1.0));
  }
  WeightClassReport best{p, side, 0.0, {}, 1};
  for (std::size_t a = 0; a + 2 <= n; ++a)
    for (std::size_t x = a + 1; x + 1 <= n; ++x)
      for (std::size_t b = x + 1; b <= n; ++b) {
        double wpart = side == Side::Plus ? pw[x] - pw[a] : pw[b] - pw[x];
        double spart = side == Side::Plus ? ps[b] - ps[x] : ps[x] - ps[a];
        double q = wpart * std::pow(spart, p - 1.0) /
                   std::pow(static_cast<double>(b - a), p);
        if (q > best.constant) {
          best.constant = q;
          best.witness = {a, x, b};
        }
      }
  return best;
}

// Two-sided analogue over interval pairs: both one-sided quantities at any
// a < x < b are dominated by the pair quantity at (a, b).
double twosided_constant(const Weight& w, double p) {
  const std::size_t n = w.size();
  std::vector<double> pw(n + 1, 0.0), ps(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    pw[i + 1] = pw[i] + w[i];
    ps[i + 1] = ps[i] + std::pow(w[i], -1.0 / (p - 1.0));
  }
  double best = 0.0;
  for (std::size_t a = 0; a + 1 <= n; ++a)
    for (std::size_t b = a + 1; b <= n; ++b) {
      double q = (pw[b] - pw[a]) * std::pow(ps[b] - ps[a], p - 1.0) /
                 std::pow(static_cast<double>(b - a), p);
      best = std::max(best, q);
    }
  return best;
}

}  // namespace

TEST_CASE("one-class constant matches pinned examples and monotone cases") {
  Weight w(0.0, 1.0, {4.0, 1.0});
  WeightClassReport r = a1_constant(w, Side::Plus);
  CHECK(r.constant == 2.5);
  CHECK(r.witness == std::vector<std::size_t>{1});
  CHECK(r.p == 1.0);

  Weight flat(0.0, 0.5, std::vector<double>(9, 3.0));
  CHECK(a1_constant(flat, Side::Plus).constant == 1.0);
  CHECK(a1_constant(flat, Side::Minus).constant == 1.0);

  test::Rng rng(201);
  for (int rep = 0; rep < 25; ++rep) {
    std::size_t n = 2 + rng.index(40);
    std::vector<double> vals = rng.dyadic_vec(n);
    std::sort(vals.begin(), vals.end());
    Weight up(0.0, 1.0, vals);
    CHECK(a1_constant(up, Side::Plus).constant == 1.0);
    CHECK(a1_constant(reversed(up), Side::Minus).constant == 1.0);
    CHECK(a1_constant(up, Side::Minus).constant >= 1.0);
  }
}

TEST_CASE("p-class constant of a flat weight is 1/4 at the midpoint triple") {
  Weight one(0.0, 1.0, std::vector<double>(8, 1.0));
  WeightClassReport r = ap_constant(one, 2.0, Side::Plus);
  CHECK(r.constant == 0.25);
  CHECK(r.witness == std::vector<std::size_t>{0, 1, 2});
  CHECK(ap_triple_value(one, 2.0, Side::Plus, 0, 1, 2) == r.constant);
  CHECK(ap_triple_value(one, 2.0, Side::Plus, 0, 4, 8) == 0.25);

  Weight c(0.0, 1.0, std::vector<double>(8, 2.0));
  CHECK(ap_constant(c, 2.0, Side::Plus).constant ==
        doctest::Approx(0.25).epsilon(1e-13));

  CHECK_THROWS_AS(ap_constant(one, 1.0, Side::Plus), std::domain_error);
  CHECK_THROWS_AS(ap_constant(Weight(0.0, 1.0, {1.0}), 2.0, Side::Plus),
                  empty_domain_error);
  CHECK_THROWS_AS(ap_constant(one, 2.0, Side::Plus, 0), std::domain_error);

  // a sparser lattice can only lose candidates
  for (std::size_t stride : {2, 3, 5}) {
    WeightClassReport sparse = ap_constant(one, 2.0, Side::Plus, stride);
    CHECK(sparse.constant <= r.constant);
    CHECK(sparse.stride == stride);
  }
}

TEST_CASE("p-class constant at stride 1 equals the literal triple enumeration") {
  test::Rng rng(202);
  for (int rep = 0; rep < 25; ++rep) {
    std::size_t n = 2 + rng.index(22);
    Weight w = random_weight(rng, n);
    for (double p : {1.5, 2.0, 3.0}) {
      for (Side s : {Side::Plus, Side::Minus}) {
        WeightClassReport fast = ap_constant(w, p, s);
        WeightClassReport lit = ap_oracle(w, p, s);
        CHECK(fast.constant == lit.constant);
        CHECK(fast.witness == lit.witness);
        CHECK(ap_triple_value(w, p, s, fast.witness[0], fast.witness[1],
                              fast.witness[2]) == fast.constant);
      }
    }
  }
}

TEST_CASE("two-sided interval quantity dominates both one-sided constants") {
  test::Rng rng(203);
  for (int rep = 0; rep < 20; ++rep) {
    std::size_t n = 3 + rng.index(20);
    Weight w = random_weight(rng, n);
    for (double p : {1.5, 2.0}) {
      double two = twosided_constant(w, p);
      CHECK(two >= ap_constant(w, p, Side::Plus).constant);
      CHECK(two >= ap_constant(w, p, Side::Minus).constant);
    }
  }
}

TEST_CASE("class constants ignore grid scale, origin, and reflection") {
  test::Rng rng(204);
  for (int rep = 0; rep < 12; ++rep) {
    std::size_t n = 4 + rng.index(20);
    Weight w = random_weight(rng, n);
    Weight scaled(7.25, 0.125, w.values());
    std::vector<double> big(w.values());
    for (double& v : big) v *= 3.0;
    Weight wbig(0.0, 1.0, big);

    CHECK(a1_constant(w, Side::Plus).constant ==
          a1_constant(scaled, Side::Plus).constant);
    CHECK(test::close_rel(a1_constant(w, Side::Plus).constant,
                          a1_constant(wbig, Side::Plus).constant, 1e-12));
    for (double p : {1.5, 2.0}) {
      double base = ap_constant(w, p, Side::Plus).constant;
      CHECK(base == ap_constant(scaled, p, Side::Plus).constant);
      CHECK(test::close_rel(base, ap_constant(wbig, p, Side::Plus).constant,
                            1e-12));
      CHECK(test::close_rel(ap_constant(w, p, Side::Minus).constant,
                            ap_constant(reversed(w), p, Side::Plus).constant,
                            1e-12));
      if (n >= 4) {
        CHECK(test::close_rel(
            fourpoint_quantity(w, p, Side::Minus).constant,
            fourpoint_quantity(reversed(w), p, Side::Plus).constant, 1e-12));
        CHECK(test::close_rel(
            fourpoint_quantity(w, p, Side::Plus).constant,
            fourpoint_quantity(wbig, p, Side::Plus).constant, 1e-12));
      }
    }
  }
}

TEST_CASE("measure-weighted constant reduces to the plain one and pins 1/36") {
  Weight w(0.0, 1.0, {1.0, 4.0});
  Weight g(0.0, 1.0, {2.0, 1.0});
  WeightClassReport r = apg_constant(w, 2.0, g);
  CHECK(r.constant == 1.0 / 36.0);
  CHECK(r.witness == std::vector<std::size_t>{0, 1, 2});

  test::Rng rng(205);
  for (int rep = 0; rep < 15; ++rep) {
    std::size_t n = 2 + rng.index(20);
    Weight wr = random_weight(rng, n);
    Weight ones(0.0, 1.0, std::vector<double>(n, 1.0));
    for (double p : {1.5, 2.0, 3.0}) {
      WeightClassReport a = apg_constant(wr, p, ones);
      WeightClassReport b = ap_constant(wr, p, Side::Plus);
      CHECK(a.constant == b.constant);
      CHECK(a.witness == b.witness);
    }
  }

  Weight off(1.0, 1.0, {1.0, 1.0});
  CHECK_THROWS_AS(apg_constant(w, 2.0, off), alignment_error);
}

TEST_CASE("four-point quantity: flat weight gives 1, enumeration agrees") {
  Weight one(0.0, 1.0, std::vector<double>(9, 1.0));
  WeightClassReport r = fourpoint_quantity(one, 2.0, Side::Plus);
  CHECK(r.constant == 1.0);
  CHECK(r.witness == std::vector<std::size_t>{0, 1, 3, 4});
  CHECK(fourpoint_value(one, 2.0, Side::Plus, 0, 1) == 1.0);
  CHECK(fourpoint_value(one, 2.0, Side::Plus, 1, 2) == 1.0);

  CHECK_THROWS_AS(fourpoint_quantity(Weight(0.0, 1.0, {1.0, 1.0, 1.0}), 2.0,
                                     Side::Plus),
                  empty_domain_error);

  Weight blocks(0.0, 1.0, {1.0, 1.0, 1.0, 1.0, 9.0, 9.0, 9.0, 9.0});
  WeightClassReport rb = fourpoint_quantity(blocks, 2.0, Side::Plus);
  // literal enumeration in the same lexicographic order
  double best = 0.0;
  std::vector<std::size_t> bw;
  for (std::size_t a = 0; a + 4 <= blocks.size(); ++a)
    for (std::size_t u = 1; a + 4 * u <= blocks.size(); ++u) {
      double q = fourpoint_value(blocks, 2.0, Side::Plus, a, u);
      if (q > best) {
        best = q;
        bw = {a, a + u, a + 3 * u, a + 4 * u};
      }
    }
  CHECK(rb.constant == best);
  CHECK(rb.witness == bw);
  CHECK(fourpoint_value(blocks, 2.0, Side::Plus, rb.witness[0],
                        rb.witness[1] - rb.witness[0]) == rb.constant);
}

TEST_CASE("factor weight pins cell values and obeys the product bound") {
  Weight w1(0.0, 1.0, {1.0, 1.0});
  Weight w2(0.0, 1.0, {1.0, 2.0});
  Weight f = factor_weight(w1, w2, 2.0);
  CHECK(f.values() == std::vector<double>{1.0, 0.5});
  CHECK_THROWS_AS(factor_weight(w1, Weight(3.0, 1.0, {1.0, 1.0}), 2.0),
                  alignment_error);

  test::Rng rng(206);
  for (int rep = 0; rep < 15; ++rep) {
    std::size_t n = 4 + rng.index(20);
    std::vector<double> up = rng.dyadic_vec(n), down = rng.dyadic_vec(n);
    std::sort(up.begin(), up.end());
    std::sort(down.begin(), down.end(), std::greater<>());
    // monotone factors and arbitrary ones; the bound holds for both
    Weight a(0.0, 1.0, up), b(0.0, 1.0, down);
    Weight c = random_weight(rng, n), d = random_weight(rng, n);
    for (double p : {1.5, 2.0, 3.0}) {
      for (auto [u, v] : {std::pair{a, b}, std::pair{c, d}}) {
        double lhs = ap_constant(factor_weight(u, v, p), p, Side::Plus).constant;
        double rhs = a1_constant(u, Side::Plus).constant *
                     std::pow(a1_constant(v, Side::Minus).constant, p - 1.0);
        CHECK(lhs <= rhs * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("delta-power weight: edge cases and 1/(1-delta) growth") {
  GridFunction f(0.0, 1.0, {0.0, 1.0, 0.0, 3.0});
  Weight w0 = mminus_delta_weight(f, 0.0);
  CHECK(w0.values() == std::vector<double>(4, 1.0));
  Weight wflat = mminus_delta_weight(GridFunction(0.0, 1.0, {1.0, 1.0, 1.0}), 0.7);
  CHECK(wflat.values() == std::vector<double>(3, 1.0));
  CHECK_THROWS_AS(mminus_delta_weight(GridFunction(0.0, 1.0, {0.0, 0.0}), 0.5),
                  degenerate_input_error);
  CHECK_THROWS_AS(mminus_delta_weight(f, 1.0), std::domain_error);
  CHECK_THROWS_AS(mminus_delta_weight(f, -0.1), std::domain_error);

  // point mass: the one-class constant of (M^- f)^delta tracks C/(1-delta);
  // finite grids bend the largest delta downward, hence the wide band
  std::vector<double> mass(8192, 0.0);
  mass[0] = 1.0;
  GridFunction pm(0.0, 1.0, mass);
  std::vector<double> deltas = {0.2, 0.35, 0.5, 0.65, 0.8, 0.95};
  std::vector<double> products;
  double prev = 0.0;
  double log_c_sum = 0.0;
  for (double d : deltas) {
    double a1 = a1_constant(mminus_delta_weight(pm, d), Side::Plus).constant;
    CHECK(a1 > prev);
    prev = a1;
    double product = a1 * (1.0 - d);
    products.push_back(product);
    log_c_sum += std::log(product);
  }
  double log_c = log_c_sum / static_cast<double>(deltas.size());
  CHECK(std::exp(log_c) > 0.5);
  CHECK(std::exp(log_c) < 1.5);
  for (double product : products) {
    CHECK(product > 0.25);
    CHECK(product < 1.25);
    CHECK(std::fabs(std::log(product) - log_c) < std::log(3.0));
  }
}

TEST_CASE("weight report serializes to parseable JSON") {
  Weight w(0.0, 1.0, {4.0, 1.0});
  WeightClassReport r = a1_constant(w, Side::Plus);
  nlohmann::json j = nlohmann::json::parse(weight_report_json(r));
  CHECK(j["constant"] == 2.5);
  CHECK(j["side"] == "plus");
  CHECK(j["p"] == 1.0);
  CHECK(j["witness"].size() == 1);
  CHECK(j["witness"][0] == 1);
  CHECK(j["stride"] == 1);
}
