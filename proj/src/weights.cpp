#include "osw/weights.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace osw {

namespace {

// Prefix value sums with a leading zero: P[k] = sum of v[0..k).
std::vector<double> prefix(const std::vector<double>& v) {
  std::vector<double> p(v.size() + 1, 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) p[i + 1] = p[i] + v[i];
  return p;
}

std::vector<double> sigma_values(const Weight& w, double p) {
  std::vector<double> s(w.values());
  const double e = -1.0 / (p - 1.0);
  for (double& v : s) v = std::pow(v, e);
  return s;
}

// Boundary lattice {0, stride, 2*stride, ...} with the right endpoint kept.
std::vector<std::size_t> boundary_lattice(std::size_t n, std::size_t stride) {
  if (stride == 0) throw std::domain_error("boundary stride must be >= 1");
  std::vector<std::size_t> pts;
  for (std::size_t i = 0; i < n; i += stride) pts.push_back(i);
  pts.push_back(n);
  return pts;
}

void require_p_above_one(double p, const char* who) {
  if (!(p > 1.0))
    throw std::domain_error(std::string(who) + ": exponent p must exceed 1");
}

}  // namespace

std::string weight_report_json(const WeightClassReport& report) {
  nlohmann::json j;
  j["p"] = report.p;
  j["side"] = side_name(report.side);
  j["constant"] = report.constant;
  j["witness"] = report.witness;
  j["stride"] = report.stride;
  return j.dump(2);
}

WeightClassReport a1_constant(const Weight& w, Side side) {
  GridFunction m = onesided_max(w, opposite(side));
  WeightClassReport report;
  report.p = 1.0;
  report.side = side;
  report.stride = 1;
  report.constant = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    double ratio = m[i] / w[i];
    if (ratio > report.constant) {
      report.constant = ratio;
      report.witness = {i};
    }
  }
  return report;
}

double ap_triple_value(const Weight& w, double p, Side side, std::size_t a,
                       std::size_t x, std::size_t b) {
  require_p_above_one(p, "ap_triple_value");
  if (!(a < x && x < b && b <= w.size()))
    throw std::out_of_range("ap_triple_value: need a < x < b <= cell count");
  std::vector<double> pw = prefix(w.values());
  std::vector<double> ps = prefix(sigma_values(w, p));
  double wpart = side == Side::Plus ? pw[x] - pw[a] : pw[b] - pw[x];
  double spart = side == Side::Plus ? ps[b] - ps[x] : ps[x] - ps[a];
  return wpart * std::pow(spart, p - 1.0) /
         std::pow(static_cast<double>(b - a), p);
}

WeightClassReport ap_constant(const Weight& w, double p, Side side,
                              std::size_t stride) {
  require_p_above_one(p, "ap_constant");
  const std::size_t n = w.size();
  if (n < 2)
    throw empty_domain_error("ap_constant: no boundary triple fits the grid");
  std::vector<double> pw = prefix(w.values());
  std::vector<double> ps = prefix(sigma_values(w, p));
  std::vector<std::size_t> pts = boundary_lattice(n, stride);

  WeightClassReport report;
  report.p = p;
  report.side = side;
  report.stride = stride;
  report.constant = 0.0;
  for (std::size_t ia = 0; ia + 2 < pts.size(); ++ia)
    for (std::size_t ix = ia + 1; ix + 1 < pts.size(); ++ix)
      for (std::size_t ib = ix + 1; ib < pts.size(); ++ib) {
        std::size_t a = pts[ia], x = pts[ix], b = pts[ib];
        double wpart = side == Side::Plus ? pw[x] - pw[a] : pw[b] - pw[x];
        double spart = side == Side::Plus ? ps[b] - ps[x] : ps[x] - ps[a];
        double q = wpart * std::pow(spart, p - 1.0) /
                   std::pow(static_cast<double>(b - a), p);
        if (q > report.constant) {
          report.constant = q;
          report.witness = {a, x, b};
        }
      }
  return report;
}

WeightClassReport apg_constant(const Weight& w, double p, const Weight& g,
                               std::size_t stride) {
  require_p_above_one(p, "apg_constant");
  require_aligned(w, g, "apg_constant");
  const std::size_t n = w.size();
  if (n < 2)
    throw empty_domain_error("apg_constant: no boundary triple fits the grid");
  const double pprime = p / (p - 1.0);
  std::vector<double> sigma = sigma_values(w, p);
  std::vector<double> tvals(n);
  for (std::size_t i = 0; i < n; ++i)
    tvals[i] = std::pow(g[i], pprime) * sigma[i];
  std::vector<double> pw = prefix(w.values());
  std::vector<double> pt = prefix(tvals);
  std::vector<double> pg = prefix(g.values());
  std::vector<std::size_t> pts = boundary_lattice(n, stride);

  WeightClassReport report;
  report.p = p;
  report.side = Side::Plus;
  report.stride = stride;
  report.constant = 0.0;
  for (std::size_t ia = 0; ia + 2 < pts.size(); ++ia)
    for (std::size_t ix = ia + 1; ix + 1 < pts.size(); ++ix)
      for (std::size_t ib = ix + 1; ib < pts.size(); ++ib) {
        std::size_t a = pts[ia], x = pts[ix], b = pts[ib];
        double q = (pw[x] - pw[a]) * std::pow(pt[b] - pt[x], p - 1.0) /
                   std::pow(pg[b] - pg[a], p);
        if (q > report.constant) {
          report.constant = q;
          report.witness = {a, x, b};
        }
      }
  return report;
}

double fourpoint_value(const Weight& w, double p, Side side, std::size_t a,
                       std::size_t u) {
  require_p_above_one(p, "fourpoint_value");
  if (u == 0 || a + 4 * u > w.size())
    throw std::out_of_range("fourpoint_value: quadruple exceeds the grid");
  std::vector<double> pw = prefix(w.values());
  std::vector<double> ps = prefix(sigma_values(w, p));
  double left_w = pw[a + u] - pw[a];
  double right_s = ps[a + 4 * u] - ps[a + 3 * u];
  double left_s = ps[a + u] - ps[a];
  double right_w = pw[a + 4 * u] - pw[a + 3 * u];
  double wpart = side == Side::Plus ? left_w : right_w;
  double spart = side == Side::Plus ? right_s : left_s;
  return wpart * std::pow(spart, p - 1.0) / std::pow(static_cast<double>(u), p);
}

WeightClassReport fourpoint_quantity(const Weight& w, double p, Side side) {
  require_p_above_one(p, "fourpoint_quantity");
  const std::size_t n = w.size();
  if (n < 4)
    throw empty_domain_error(
        "fourpoint_quantity: no boundary quadruple fits the grid");
  std::vector<double> pw = prefix(w.values());
  std::vector<double> ps = prefix(sigma_values(w, p));

  WeightClassReport report;
  report.p = p;
  report.side = side;
  report.stride = 1;
  report.constant = 0.0;
  for (std::size_t a = 0; a + 4 <= n; ++a)
    for (std::size_t u = 1; a + 4 * u <= n; ++u) {
      double wpart = side == Side::Plus ? pw[a + u] - pw[a]
                                        : pw[a + 4 * u] - pw[a + 3 * u];
      double spart = side == Side::Plus ? ps[a + 4 * u] - ps[a + 3 * u]
                                        : ps[a + u] - ps[a];
      double q = wpart * std::pow(spart, p - 1.0) /
                 std::pow(static_cast<double>(u), p);
      if (q > report.constant) {
        report.constant = q;
        report.witness = {a, a + u, a + 3 * u, a + 4 * u};
      }
    }
  return report;
}

Weight factor_weight(const Weight& w1, const Weight& w2, double p) {
  require_p_above_one(p, "factor_weight");
  require_aligned(w1, w2, "factor_weight");
  std::vector<double> out(w1.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = w1[i] * std::pow(w2[i], 1.0 - p);
  return Weight(w1.origin(), w1.delta(), std::move(out));
}

Weight mminus_delta_weight(const GridFunction& f, double delta_exp,
                           double eps_floor) {
  if (!(delta_exp >= 0.0 && delta_exp < 1.0))
    throw std::domain_error("mminus_delta_weight: delta_exp must lie in [0, 1)");
  GridFunction m = onesided_max(f, Side::Minus);
  double top = *std::max_element(m.values().begin(), m.values().end());
  if (top == 0.0)
    throw degenerate_input_error(
        "mminus_delta_weight: f vanishes identically");
  const double floor_value = eps_floor > 0.0 ? eps_floor : 1e-12 * top;
  std::vector<double> out(m.values());
  for (double& v : out) v = std::pow(std::max(v, floor_value), delta_exp);
  return Weight(f.origin(), f.delta(), std::move(out));
}

}  // namespace osw
