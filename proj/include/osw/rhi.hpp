#pragma once

#include <string>

#include "osw/check.hpp"
#include "osw/weights.hpp"

namespace osw {

/**
 * Exponent package for the sharp weak reverse Hölder estimates.  Given the
 * class exponent p and the weight's measured constant, fixes the Hölder
 * bump r_w, the level-set constant beta, and delta_rhi = r_w - 1:
 *   p == 1: r_w = 1 + 1/(16 E c),        beta = 1/c
 *   p  > 1: r_w = 1 + 1/(4^(p+2) E c),   beta = 1/(4^p c)
 * with E = e^(1/e).  r_w decreases strictly toward 1 as c grows.
 */
struct RhiParams {
  double p = 1.0;
  double ap_norm = 1.0;
  double r_w = 1.0;
  double beta = 1.0;
  double delta_rhi = 0.0;
};

RhiParams rhi_exponent(double p, double ap_norm);

/// JSON object {lhs, rhs, slack, pass, params:{...}}.
std::string check_json(const CheckRecord& check, const RhiParams& params);

/// Max average of w over windows [t, iv.last) with t inside iv: the value of
/// the left-looking maximal of w*chi_iv at the interval's right endpoint.
double minus_max_at_right(const GridFunction& w, CellInterval iv);

/**
 * Weak reverse Hölder check on one interval.  integral_form verifies
 *   sum_iv w^r_w * delta <= 2 * lambda0^(r_w - 1) * sum_iv w * delta,
 * norm_form verifies the r_w-average form
 *   (max window average of w^r_w at the right endpoint)^(1/r_w) <= 2 lambda0,
 * where lambda0 = minus_max_at_right(w, iv).  Both hold for every interval
 * when params comes from the weight's own measured class constant.
 */
struct WeakRhiRecord {
  CheckRecord integral_form;
  CheckRecord norm_form;
  double lambda0 = 0.0;
  bool pass = false;
};

WeakRhiRecord verify_weak_rhi(const Weight& w, CellInterval iv,
                              const RhiParams& params);

/**
 * Level-set comparison on iv for lambda above lambda0:
 *   w({w > lambda}) <= 2 lambda |{w > beta * lambda}|
 * with both sets intersected with iv.  lambda <= lambda0 is rejected, the
 * estimate assumes the level is above the right-endpoint maximal value.
 */
CheckRecord levelset_check(const Weight& w, CellInterval iv, double lambda,
                           const RhiParams& params);

/**
 * Block form of the reverse Hölder inequality on a triple a < b < c with
 * b - a = 2(c - b) in cells:
 *   avg_[a,b) w^r_w <= 27/4 * (avg_[a,c) w)^r_w.
 */
CheckRecord verify_block_rhi(const Weight& w, std::size_t a, std::size_t b,
                             std::size_t c, const RhiParams& params);

/**
 * Small-set decay implication on a < b < c with E a set of cells in [b, c):
 * if |E| < exp(-C ||w||) (b - a) with C = r' (ln xi_cfg + ln(1/eps_target))
 * / ||w|| * safety, then w(E) < eps_target * w([a, c)).  r' is the conjugate
 * of the weight's r_w and ||w|| its measured side constant (a1 for p == 1).
 * The literal threshold is astronomically small, so the hypothesis is
 * usually vacuous at desk scale; measured_xi = (w(E)/w[a,c)) /
 * (|E|/(b-a))^(1/r') is reported so the chain's xi premise can be judged on
 * the data regardless.  safety scales C (1 = the literal proof constant).
 */
struct SmallsetRecord {
  double class_constant = 0.0;
  double r_conjugate = 0.0;
  double threshold = 0.0;
  double set_fraction = 0.0;
  double weight_fraction = 0.0;
  double measured_xi = 0.0;
  bool hypothesis = false;
  bool conclusion = false;
  bool pass = false;
};

SmallsetRecord smallset_decay_check(const Weight& w, double p, Side side,
                                    double eps_target, std::size_t a,
                                    std::size_t b, std::size_t c,
                                    const std::vector<std::size_t>& set_cells,
                                    double xi_cfg = 12.0, double safety = 1.0,
                                    double known_constant = 0.0);

/**
 * Self-improvement of the class exponent: sigma = w^(-1/(p-1)) is measured
 * in the opposite class at p', its reverse Hölder exponent r_sigma gives
 * p_minus_eps = (p - 1)/r_sigma + 1 < p, and the four-point quantity of w is
 * evaluated there against (1/4) (81/64)^(p-1) ||w||.  finite reports that the
 * quantity exists; pass reports the literal bound.
 */
struct OpennessRecord {
  double p = 0.0;
  double p_minus_eps = 0.0;
  double sigma_norm = 0.0;
  double r_sigma = 0.0;
  double ap_norm = 0.0;
  double fourpoint = 0.0;
  double bound = 0.0;
  bool finite = false;
  bool pass = false;
};

OpennessRecord openness_exponent(const Weight& w, double p);

}  // namespace osw
