#pragma once

#include <stdexcept>
#include <string>

namespace osw {

/// Grids passed to one operation disagree in origin, spacing, or size.
struct alignment_error : std::invalid_argument {
  explicit alignment_error(const std::string& what) : std::invalid_argument(what) {}
};

/// An operation precondition on the inputs does not hold (truncation radius
/// below half a cell, level below the boundary maximal value, ...).
struct precondition_error : std::invalid_argument {
  explicit precondition_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Input is structurally valid but carries no usable content (identically
/// zero data where mass is required, grid too short for any admissible
/// configuration, ...).
struct degenerate_input_error : std::invalid_argument {
  explicit degenerate_input_error(const std::string& what) : std::invalid_argument(what) {}
};

/// No admissible point configuration exists on the given grid.
struct empty_domain_error : std::invalid_argument {
  explicit empty_domain_error(const std::string& what) : std::invalid_argument(what) {}
};

/// A requested constant in a configuration is inconsistent with measured data.
struct config_error : std::invalid_argument {
  explicit config_error(const std::string& what) : std::invalid_argument(what) {}
};

/// An iterative estimator failed to reach its stopping rule.
struct estimation_error : std::runtime_error {
  explicit estimation_error(const std::string& what) : std::runtime_error(what) {}
};

/// Floating-point evaluation could not meet the requested tolerance.
struct numeric_error : std::runtime_error {
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace osw
