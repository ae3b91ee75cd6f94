#pragma once

#include "osw/grid.hpp"

namespace osw {

/// Window direction: Plus averages [x, x+h), Minus averages (x-h, x].
enum class Side { Plus, Minus };

Side opposite(Side s);
const char* side_name(Side s);

/**
 * One-sided maximal function over cell-aligned windows.
 *
 * Plus: out_i = max over j >= i of the average of |f| on cells [i, j].
 * Minus: out_i = max over j <= i of the average of |f| on cells [j, i].
 * For a step function this equals the continuum operator sampled at the left
 * (Plus) or right (Minus) boundary of cell i.
 *
 * Window sums are taken as differences of one left-to-right prefix-sum pass,
 * and the single-cell candidate is |f_i| itself, so out_i >= |f_i| holds
 * exactly and results are bit-identical with onesided_max_oracle.
 */
GridFunction onesided_max(const GridFunction& f, Side side);

/// Literal O(n^2) window enumeration with the same prefix-sum evaluation
/// order as the fast path; equality of the two is exact, not approximate.
GridFunction onesided_max_oracle(const GridFunction& f, Side side);

/// (M^side |f|^r)^(1/r); requires r >= 1.  r == 1 short-circuits to
/// onesided_max so no power round-trip is introduced.
GridFunction onesided_max_power(const GridFunction& f, Side side, double r);

/// Windowed averages taken against the measure g: max over windows of
/// (sum |f| g) / (sum g).  With g identically 1 this reproduces
/// onesided_max bit for bit.
GridFunction onesided_max_weighted(const GridFunction& f, const Weight& g, Side side);

}  // namespace osw
