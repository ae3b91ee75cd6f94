#pragma once

#include <string>
#include <vector>

#include "osw/check.hpp"
#include "osw/maximal.hpp"

namespace osw {

/**
 * Level decomposition of a nonnegative function driven by the right-looking
 * maximal operator.  The input is zero-padded on the left until the level set
 * {onesided_max(f, Plus) > lambda} closes inside the grid; components are the
 * maximal runs of that set, each with average of f in (lambda,
 * lambda * (1 + eta)].  good equals lambda on the components and f elsewhere,
 * bad = f - good, so f = good + bad cellwise (bitwise for dyadic f, lambda).
 * left_companions[j] is the interval of length 2|I_j| ending where component
 * j begins; omega_tilde[j] is companion + component joined.
 */
struct CZDecomposition {
  double lambda = 0.0;
  std::size_t pad_cells = 0;
  double eta = 0.0;
  GridFunction padded_f;
  std::vector<CellInterval> components;
  std::vector<CellInterval> left_companions;
  std::vector<CellInterval> omega_tilde;
  GridFunction good;
  GridFunction bad;
  std::vector<GridFunction> bad_parts;
};

/// Pre: f >= 0 cellwise, lambda > 0.  Throws precondition_error on negative
/// values, std::domain_error on a bad level, numeric_error if a detected
/// component misses its average bracket.
CZDecomposition cz_decompose(const GridFunction& f, double lambda);

/// Structure part only (lambda, pad_cells, eta, intervals, averages).
std::string cz_decomposition_json(const CZDecomposition& dec);

/**
 * Weighted facts about a decomposition.  With u = onesided_max(w, Minus) on
 * the padded grid:
 *   companion_literal[j]:    w(I_j^-) <= (3/lambda) sum_{I_j^-} f u delta
 *   companion_component[j]:  w(I_j^-) <= (3/lambda) sum_{I_j}   f u delta
 *   total_weight:    sum_j w(I_j) <= (4/lambda) sum f u delta
 *   masked_ratio[j]: spread max/min over I_j of the left-looking maximal of
 *                    w restricted off omega_tilde[j]; bounded by 3/2, zero
 *                    recorded when that maximal vanishes on I_j (companion
 *                    flush with the grid edge).
 * The literal companion form can fail when f has no mass on the companion;
 * pass aggregates the component form, the total bound, and the mask spread.
 */
struct CZReport {
  std::vector<CheckRecord> companion_literal;
  std::vector<CheckRecord> companion_component;
  CheckRecord total_weight;
  std::vector<double> masked_ratio;
  double masked_ratio_max = 0.0;
  bool pass = false;
};

/// w may share the padded grid or the original one; an original-grid weight
/// is extended onto the padding with its leftmost value.
CZReport cz_report(const CZDecomposition& dec, const Weight& w);

std::string cz_report_json(const CZReport& report);

}  // namespace osw
