#pragma once

#include <limits>

namespace osw {

/// One verified inequality: pass iff lhs <= rhs * (1 + tol).  slack is
/// rhs / lhs (infinity when lhs == 0) so near-equality cases are visible.
struct CheckRecord {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool pass = false;
};

inline CheckRecord make_check(double lhs, double rhs, double tol = 1e-9) {
  double slack =
      lhs > 0.0 ? rhs / lhs : std::numeric_limits<double>::infinity();
  return {lhs, rhs, slack, lhs <= rhs * (1.0 + tol)};
}

}  // namespace osw
