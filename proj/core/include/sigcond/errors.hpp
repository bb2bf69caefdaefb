#pragma once

#include <stdexcept>
#include <string>

namespace sigcond {

/// Unreadable or malformed input files.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Arguments or inputs rejected before any computation starts.
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A seed set that cannot start a detection run (e.g. a degree-zero seed).
struct degenerate_seed_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Objective evaluated where it is undefined (zero weighted volume).
/// A typed error instead of a NaN sentinel: a silent NaN would corrupt
/// line search comparisons downstream.
struct undefined_objective_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sigcond
