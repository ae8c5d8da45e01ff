#pragma once

#include <stdexcept>
#include <string>

namespace dnormal {

/// Malformed input or a violated operation precondition (CLI exit code 2).
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A computation that could not be completed: exhausted budgets, degenerate
/// weight vectors, non-pointed cones, internal cross-check failures
/// (CLI exit code 3).
struct ComputeError : std::runtime_error {
  explicit ComputeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dnormal
