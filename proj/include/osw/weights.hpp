#pragma once

#include <string>

#include "osw/maximal.hpp"

namespace osw {

/**
 * Result of a weight-class constant estimation.
 *
 * `witness` holds cell-boundary indices (a single cell index when p == 1) in
 * strictly increasing order, and `constant` equals the class quantity
 * evaluated at exactly those indices.  Ties are broken toward the
 * lexicographically smallest witness.  `stride` records the enumeration step;
 * 1 means exhaustive, larger strides give a certified lower bound.
 */
struct WeightClassReport {
  double p = 1.0;
  Side side = Side::Plus;
  double constant = 0.0;
  std::vector<std::size_t> witness;
  std::size_t stride = 1;
};

/// JSON object {p, side, constant, witness, stride}.
std::string weight_report_json(const WeightClassReport& report);

/**
 * Smallest C with (opposite-side maximal of w) <= C * w cellwise: Plus tests
 * M^- w / w, Minus tests M^+ w / w.  Always >= 1 since the maximal dominates
 * w; equals 1 exactly for weights that are monotone in the favourable
 * direction.  Witness is the first cell attaining the max.
 */
WeightClassReport a1_constant(const Weight& w, Side side);

/**
 * Max over boundary triples a < x < b of
 *   Plus:  (sum_[a,x) w) * (sum_[x,b) sigma)^(p-1) / (b-a)^p
 *   Minus: (sum_[x,b) w) * (sum_[a,x) sigma)^(p-1) / (b-a)^p
 * with sigma = w^(-1/(p-1)) and (b-a) counted in cells; the grid spacing
 * cancels, so the value matches the integral form on step functions and is
 * invariant under scaling and translation of the grid.  Triples run over the
 * stride lattice {0, stride, 2*stride, ...} plus the right endpoint.
 */
WeightClassReport ap_constant(const Weight& w, double p, Side side,
                              std::size_t stride = 1);

/// The quantity inside ap_constant at one triple, same arithmetic.
double ap_triple_value(const Weight& w, double p, Side side, std::size_t a,
                       std::size_t x, std::size_t b);

/**
 * Measure-weighted variant: max over triples of
 *   (sum_[a,x) w) * (sum_[x,b) g^p' sigma)^(p-1) / (sum_[a,b) g)^p,
 * p' = p/(p-1).  With g identically 1 this reproduces ap_constant(..., Plus)
 * bit for bit.
 */
WeightClassReport apg_constant(const Weight& w, double p, const Weight& g,
                               std::size_t stride = 1);

/**
 * Max over boundary quadruples a < b < c < d with geometry
 * 2(b-a) = 2(d-c) = c-b of
 *   Plus:  (sum_[a,b) w) * (sum_[c,d) sigma)^(p-1) / (b-a)^p
 *   Minus: (sum_[c,d) w) * (sum_[a,b) sigma)^(p-1) / (b-a)^p.
 * The two averaging blocks sit at distance twice their common length, so the
 * quantity is finite for weights in a strictly smaller exponent class.
 * Throws empty_domain_error when the grid has no admissible quadruple.
 */
WeightClassReport fourpoint_quantity(const Weight& w, double p, Side side);

/// The quantity inside fourpoint_quantity at one quadruple (a, a+u, a+3u, a+4u).
double fourpoint_value(const Weight& w, double p, Side side, std::size_t a,
                       std::size_t u);

/// Cellwise w1 * w2^(1-p); the canonical way to assemble a p-class weight
/// from two opposite-sided 1-class factors.
Weight factor_weight(const Weight& w1, const Weight& w2, double p);

/**
 * (M^- f)^delta_exp as a Weight, delta_exp in [0, 1).  M^- f vanishes
 * strictly left of the support of f, so those cells are clamped to eps_floor
 * before the power; eps_floor <= 0 selects 1e-12 * max(M^- f).  Tuning
 * delta_exp toward 1 produces weights with a1_constant(Plus) blowing up like
 * 1/(1 - delta_exp).
 */
Weight mminus_delta_weight(const GridFunction& f, double delta_exp,
                           double eps_floor = 0.0);

}  // namespace osw
