#pragma once

#include <stdexcept>
#include <string>

namespace gsearch {

/// Register size outside the supported range, or a dimension mismatch
/// between a state and the operator applied to it.
class SizingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A state whose norm drifted away from 1. Kernels never renormalize, so this
/// always points at a kernel bug upstream.
class NormalizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A search driver asked for a segment that overlaps bits it already resolved.
class SchedulingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A non-exact segment search exhausted its retry budget.
class SearchFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gsearch
