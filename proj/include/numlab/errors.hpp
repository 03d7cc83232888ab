// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace numlab {

// Error conventions used across the library:
//   std::invalid_argument  - caller misuse (bad shapes, empty inputs, unknown keys)
//   std::domain_error      - mathematically invalid parameter values
// The types below carry extra context for failures that tests and the CLI
// need to distinguish.

/// Jacobian of a layer map is singular; reports which coordinate killed it.
class SingularJacobianError : public std::domain_error {
 public:
  SingularJacobianError(std::size_t coordinate, const std::string& what)
      : std::domain_error(what), coordinate_(coordinate) {}
  std::size_t coordinate() const noexcept { return coordinate_; }

 private:
  std::size_t coordinate_;
};

/// Sample set has zero variance, so normalized moments are undefined.
class DegenerateDistributionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Explicit time stepping blew past the overflow guard.
class InstabilityError : public std::runtime_error {
 public:
  InstabilityError(std::size_t step, const std::string& what)
      : std::runtime_error(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// A required external facility (e.g. the compressor) is not usable.
class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace numlab
