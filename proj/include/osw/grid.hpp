#pragma once

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include "osw/errors.hpp"

namespace osw {

/// Half-open run of cell indices [first, last).
struct CellInterval {
  std::size_t first = 0;
  std::size_t last = 0;

  std::size_t size() const { return last > first ? last - first : 0; }
  bool empty() const { return last <= first; }
  bool contains(std::size_t i) const { return first <= i && i < last; }
};

/**
 * Step function on a uniform grid, zero outside the covered range.
 *
 * Cell i covers [origin + i*delta, origin + (i+1)*delta).  Spacing must be
 * positive and every value finite; this is validated once on construction so
 * downstream code never revalidates.
 */
class GridFunction {
 public:
  GridFunction(double origin, double delta, std::vector<double> values);

  double origin() const { return origin_; }
  double delta() const { return delta_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  /// Left boundary of cell i; i == size() is the right end of the grid.
  double boundary(std::size_t i) const {
    return origin_ + delta_ * static_cast<double>(i);
  }

  /// Same origin, spacing, and cell count.
  bool aligned_with(const GridFunction& other) const;

  CellInterval whole() const { return {0, size()}; }

 private:
  double origin_;
  double delta_;
  std::vector<double> values_;
};

/// GridFunction with strictly positive values.
class Weight : public GridFunction {
 public:
  explicit Weight(GridFunction g);
  Weight(double origin, double delta, std::vector<double> values);
};

/// Throws alignment_error unless a and b share a grid.  `who` names the
/// operation for the message.
void require_aligned(const GridFunction& a, const GridFunction& b, const char* who);

/// Apply fn to every value, keeping the grid.
template <typename F>
GridFunction cellwise(const GridFunction& f, F&& fn) {
  std::vector<double> out(f.values());
  for (double& v : out) v = fn(v);
  return GridFunction(f.origin(), f.delta(), std::move(out));
}

/// Plain integral of f over the whole grid (sum of values times delta,
/// accumulated left to right).
double integral(const GridFunction& f);

/// Sum of values over [cells.first, cells.last), left to right, no delta.
double value_sum(const GridFunction& f, CellInterval cells);

/// w-measure of the cells: sum of w over the run, times delta.
double weighted_measure(const Weight& w, CellInterval cells);

/// (sum |f_i|^p w_i delta)^(1/p).  Requires p >= 1 and a shared grid.
double lp_norm(const GridFunction& f, double p, const Weight& w);

/// Weak norm sup_t t * w(|f| >= t)^(1/p); for a step function the sup is
/// attained at a value of |f|, so it is evaluated exactly by enumerating the
/// distinct levels.
double weak_lp_norm(const GridFunction& f, double p, const Weight& w);

/// Extend with zero cells; the origin moves left by left_cells * delta.
GridFunction pad_zero(const GridFunction& f, std::size_t left_cells,
                      std::size_t right_cells);

/// JSON object {"origin":..., "delta":..., "values":[...]}.
void write_json(const GridFunction& f, std::ostream& out);
GridFunction read_json(std::istream& in);

/// CSV with "# origin=..." and "# delta=..." header comments followed by
/// cell_index,value rows.  UTF-8, '.' decimal separator.
void write_csv(const GridFunction& f, std::ostream& out);
GridFunction read_csv(std::istream& in);

/// File helpers; format is chosen by extension (.json / .csv).
GridFunction load_grid_file(const std::string& path);
void save_grid_file(const GridFunction& f, const std::string& path);

}  // namespace osw
