#include "osw/rhi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

namespace osw {

namespace {

void require_interval(const GridFunction& w, CellInterval iv, const char* who) {
  if (iv.last > w.size())
    throw std::out_of_range(std::string(who) + ": interval exceeds the grid");
  if (iv.empty())
    throw empty_domain_error(std::string(who) + ": interval is empty");
}

}  // namespace

RhiParams rhi_exponent(double p, double ap_norm) {
  if (!(p >= 1.0))
    throw std::domain_error("rhi_exponent: exponent p must be >= 1");
  if (!(ap_norm > 0.0) || !std::isfinite(ap_norm))
    throw std::domain_error("rhi_exponent: class constant must be positive");
  const double bump = std::exp(std::exp(-1.0));
  RhiParams out;
  out.p = p;
  out.ap_norm = ap_norm;
  if (p == 1.0) {
    out.r_w = 1.0 + 1.0 / (16.0 * bump * ap_norm);
    out.beta = 1.0 / ap_norm;
  } else {
    out.r_w = 1.0 + 1.0 / (std::pow(4.0, p + 2.0) * bump * ap_norm);
    out.beta = 1.0 / (std::pow(4.0, p) * ap_norm);
  }
  out.delta_rhi = out.r_w - 1.0;
  return out;
}

std::string check_json(const CheckRecord& check, const RhiParams& params) {
  nlohmann::json j;
  j["lhs"] = check.lhs;
  j["rhs"] = check.rhs;
  j["slack"] = check.slack;
  j["pass"] = check.pass;
  j["params"] = {{"p", params.p},
                 {"ap_norm", params.ap_norm},
                 {"r_w", params.r_w},
                 {"beta", params.beta},
                 {"delta_rhi", params.delta_rhi}};
  return j.dump(2);
}

double minus_max_at_right(const GridFunction& w, CellInterval iv) {
  require_interval(w, iv, "minus_max_at_right");
  double sum = 0.0;
  double best = 0.0;
  for (std::size_t k = 0; k < iv.size(); ++k) {
    sum += std::fabs(w[iv.last - 1 - k]);
    best = std::max(best, sum / static_cast<double>(k + 1));
  }
  return best;
}

WeakRhiRecord verify_weak_rhi(const Weight& w, CellInterval iv,
                              const RhiParams& params) {
  require_interval(w, iv, "verify_weak_rhi");
  const double r = params.r_w;
  const double lambda0 = minus_max_at_right(w, iv);

  double power_sum = 0.0;
  double plain_sum = 0.0;
  for (std::size_t i = iv.first; i < iv.last; ++i) {
    power_sum += std::pow(w[i], r);
    plain_sum += w[i];
  }
  WeakRhiRecord out;
  out.lambda0 = lambda0;
  out.integral_form =
      make_check(power_sum * w.delta(), 2.0 * std::pow(lambda0, r - 1.0) *
                                            (plain_sum * w.delta()));

  double window_sum = 0.0;
  double window_best = 0.0;
  for (std::size_t k = 0; k < iv.size(); ++k) {
    window_sum += std::pow(w[iv.last - 1 - k], r);
    window_best = std::max(window_sum / static_cast<double>(k + 1), window_best);
  }
  out.norm_form = make_check(std::pow(window_best, 1.0 / r), 2.0 * lambda0);
  out.pass = out.integral_form.pass && out.norm_form.pass;
  return out;
}

CheckRecord levelset_check(const Weight& w, CellInterval iv, double lambda,
                           const RhiParams& params) {
  require_interval(w, iv, "levelset_check");
  const double lambda0 = minus_max_at_right(w, iv);
  if (!(lambda > lambda0))
    throw precondition_error(
        "levelset_check: lambda must exceed the right-endpoint maximal value");
  double above = 0.0;
  std::size_t wide = 0;
  for (std::size_t i = iv.first; i < iv.last; ++i) {
    if (w[i] > lambda) above += w[i];
    if (w[i] > params.beta * lambda) ++wide;
  }
  return make_check(above * w.delta(),
                    2.0 * lambda * (static_cast<double>(wide) * w.delta()));
}

CheckRecord verify_block_rhi(const Weight& w, std::size_t a, std::size_t b,
                             std::size_t c, const RhiParams& params) {
  if (!(a < b && b < c && c <= w.size()))
    throw precondition_error("verify_block_rhi: need a < b < c inside the grid");
  if (b - a != 2 * (c - b))
    throw precondition_error("verify_block_rhi: geometry requires b-a = 2(c-b)");
  const double r = params.r_w;
  double power_sum = 0.0;
  for (std::size_t i = a; i < b; ++i) power_sum += std::pow(w[i], r);
  double plain_sum = 0.0;
  for (std::size_t i = a; i < c; ++i) plain_sum += w[i];
  double lhs = power_sum / static_cast<double>(b - a);
  double rhs = 6.75 * std::pow(plain_sum / static_cast<double>(c - a), r);
  return make_check(lhs, rhs);
}

SmallsetRecord smallset_decay_check(const Weight& w, double p, Side side,
                                    double eps_target, std::size_t a,
                                    std::size_t b, std::size_t c,
                                    const std::vector<std::size_t>& set_cells,
                                    double xi_cfg, double safety,
                                    double known_constant) {
  if (!(a < b && b < c && c <= w.size()))
    throw precondition_error(
        "smallset_decay_check: need a < b < c inside the grid");
  for (std::size_t i : set_cells)
    if (i < b || i >= c)
      throw precondition_error(
          "smallset_decay_check: set cell outside (b, c)");
  if (!(eps_target > 0.0 && eps_target < 1.0))
    throw std::domain_error(
        "smallset_decay_check: eps_target must lie in (0, 1)");
  if (!(xi_cfg >= 1.0) || !(safety > 0.0))
    throw config_error("smallset_decay_check: need xi_cfg >= 1 and safety > 0");

  SmallsetRecord out;
  out.class_constant =
      known_constant > 0.0
          ? known_constant
          : (p == 1.0 ? a1_constant(w, side).constant
                      : ap_constant(w, p, side).constant);
  RhiParams params = rhi_exponent(p, out.class_constant);
  out.r_conjugate = params.r_w / (params.r_w - 1.0);
  out.threshold = std::exp(-out.r_conjugate * safety *
                           (std::log(xi_cfg) + std::log(1.0 / eps_target)));

  out.set_fraction =
      static_cast<double>(set_cells.size()) / static_cast<double>(b - a);
  double set_weight = 0.0;
  for (std::size_t i : set_cells) set_weight += w[i];
  double block_weight = value_sum(w, {a, c});
  out.weight_fraction = set_weight / block_weight;

  out.hypothesis = out.set_fraction < out.threshold;
  out.conclusion = out.weight_fraction < eps_target;
  out.pass = !out.hypothesis || out.conclusion;
  out.measured_xi =
      set_cells.empty()
          ? 0.0
          : out.weight_fraction /
                std::pow(out.set_fraction, 1.0 / out.r_conjugate);
  return out;
}

OpennessRecord openness_exponent(const Weight& w, double p) {
  if (!(p > 1.0))
    throw std::domain_error("openness_exponent: exponent p must exceed 1");
  const double pprime = p / (p - 1.0);
  std::vector<double> sv(w.values());
  for (double& v : sv) v = std::pow(v, -1.0 / (p - 1.0));
  Weight sigma(w.origin(), w.delta(), std::move(sv));

  OpennessRecord out;
  out.p = p;
  out.sigma_norm = ap_constant(sigma, pprime, Side::Minus).constant;
  out.r_sigma = rhi_exponent(pprime, out.sigma_norm).r_w;
  out.p_minus_eps = (p - 1.0) / out.r_sigma + 1.0;
  out.ap_norm = ap_constant(w, p, Side::Plus).constant;
  out.fourpoint = fourpoint_quantity(w, out.p_minus_eps, Side::Plus).constant;
  out.bound = 0.25 * std::pow(81.0 / 64.0, p - 1.0) * out.ap_norm;
  out.finite = std::isfinite(out.fourpoint);
  out.pass = out.finite && out.fourpoint <= out.bound * (1.0 + 1e-9);
  return out;
}

}  // namespace osw
