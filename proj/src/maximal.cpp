#include "osw/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace osw {

Side opposite(Side s) { return s == Side::Plus ? Side::Minus : Side::Plus; }

const char* side_name(Side s) { return s == Side::Plus ? "plus" : "minus"; }

namespace {

// Prefix sums with a leading zero, accumulated left to right.  The fast path
// and the oracle both difference this one array; that shared evaluation order
// is what lets tests demand bit-identical outputs.
std::vector<double> prefix(const std::vector<double>& v) {
  std::vector<double> p(v.size() + 1, 0.0);
  for (std::size_t k = 0; k < v.size(); ++k) p[k + 1] = p[k] + v[k];
  return p;
}

// out[i] = max(floors[i], max_{j > i} (ys[j]-ys[i]) / (xs[j]-xs[i])),
// xs strictly increasing.  Right-to-left scan over the upper convex hull of
// the points already seen: consecutive hull slopes decrease rightward, so a
// hull front edge that does not bend down is never the best partner of any
// further-left query point and can be dropped for good.  Each index is pushed
// and popped at most once, so the whole pass is O(n) amortized.
std::vector<double> max_forward_slope(const std::vector<double>& xs,
                                      const std::vector<double>& ys,
                                      const std::vector<double>& floors) {
  const std::size_t n = floors.size();
  std::vector<double> out(n);
  std::vector<std::size_t> hull;
  hull.reserve(n + 1);
  hull.push_back(n);
  auto slope = [&](std::size_t a, std::size_t b) {
    return (ys[b] - ys[a]) / (xs[b] - xs[a]);
  };
  for (std::size_t i = n; i-- > 0;) {
    while (hull.size() >= 2 &&
           slope(i, hull.back()) <= slope(hull.back(), hull[hull.size() - 2]))
      hull.pop_back();
    out[i] = std::max(floors[i], slope(i, hull.back()));
    hull.push_back(i);
  }
  return out;
}

// Literal enumeration of every window, same slope expression as above.
std::vector<double> brute_forward_slope(const std::vector<double>& xs,
                                        const std::vector<double>& ys,
                                        const std::vector<double>& floors) {
  const std::size_t n = floors.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double best = floors[i];
    for (std::size_t j = i + 1; j <= n; ++j) {
      double cand = (ys[j] - ys[i]) / (xs[j] - xs[i]);
      if (cand > best) best = cand;
    }
    out[i] = best;
  }
  return out;
}

std::vector<double> abs_values(const GridFunction& f) {
  std::vector<double> a(f.values());
  for (double& v : a) v = std::fabs(v);
  return a;
}

std::vector<double> unit_abscissa(std::size_t n) {
  std::vector<double> x(n + 1);
  for (std::size_t k = 0; k <= n; ++k) x[k] = static_cast<double>(k);
  return x;
}

// Minus windows are Plus windows of the reversed sequence; solving the Plus
// problem on reversed data keeps a single hull implementation and makes the
// reflection duality identity exact rather than approximate.
template <typename Core>
GridFunction run_sided(const GridFunction& f, Side side, Core&& core) {
  std::vector<double> a = abs_values(f);
  if (side == Side::Minus) std::reverse(a.begin(), a.end());
  std::vector<double> out = core(a);
  if (side == Side::Minus) std::reverse(out.begin(), out.end());
  return GridFunction(f.origin(), f.delta(), std::move(out));
}

}  // namespace

GridFunction onesided_max(const GridFunction& f, Side side) {
  return run_sided(f, side, [](const std::vector<double>& a) {
    return max_forward_slope(unit_abscissa(a.size()), prefix(a), a);
  });
}

GridFunction onesided_max_oracle(const GridFunction& f, Side side) {
  return run_sided(f, side, [](const std::vector<double>& a) {
    return brute_forward_slope(unit_abscissa(a.size()), prefix(a), a);
  });
}

GridFunction onesided_max_power(const GridFunction& f, Side side, double r) {
  if (!(r >= 1.0) || !std::isfinite(r))
    throw std::domain_error("onesided_max_power: need finite r >= 1");
  if (r == 1.0) return onesided_max(f, side);
  GridFunction powered =
      cellwise(f, [r](double v) { return std::pow(std::fabs(v), r); });
  GridFunction m = onesided_max(powered, side);
  return cellwise(m, [r](double v) { return std::pow(v, 1.0 / r); });
}

GridFunction onesided_max_weighted(const GridFunction& f, const Weight& g, Side side) {
  require_aligned(f, g, "onesided_max_weighted");
  std::vector<double> a = abs_values(f);
  std::vector<double> gv = g.values();
  if (side == Side::Minus) {
    std::reverse(a.begin(), a.end());
    std::reverse(gv.begin(), gv.end());
  }
  std::vector<double> fg(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) fg[k] = a[k] * gv[k];
  // abscissa = g mass; window average (sum |f| g)/(sum g) is again a slope
  std::vector<double> out = max_forward_slope(prefix(gv), prefix(fg), a);
  if (side == Side::Minus) std::reverse(out.begin(), out.end());
  return GridFunction(f.origin(), f.delta(), std::move(out));
}

}  // namespace osw
