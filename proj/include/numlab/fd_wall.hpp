// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "numlab/table.hpp"

namespace numlab::fdwall {

enum class Precision { binary32, binary64 };

std::string to_string(Precision precision);
Precision precision_from_string(std::string_view name);

/// Sweep configuration for the roundoff-wall experiment: the centered
/// difference of f(x) = x^4 evaluated entirely in the chosen float width.
struct WallExperimentConfig {
  Precision precision = Precision::binary64;
  std::vector<double> h_values;  // strictly decreasing, all > 0
  double eval_point = 1.0;

  void validate() const;
};

struct WallRow {
  double h;  // snapped to the working precision
  double relative_error;
};

struct WallResult {
  std::vector<WallRow> rows;
  double wall_h = 0.0;        // argmin of relative_error over the sweep
  std::size_t wall_index = 0;
};

/// Centered difference (f(x+h)-f(x-h))/2h of f(x)=x^4 with every operation
/// rounded to the chosen precision; x^4 is evaluated as (x*x)*(x*x) and h is
/// snapped to the precision before use. Throws std::domain_error when the
/// snapped h underflows to zero.
double centered_difference(double h, Precision precision, double eval_point = 1.0);

/// Default sweep: 10 points per decade from 1e-1 down to 1e-12 (binary64)
/// or 1e-7 (binary32).
std::vector<double> default_h_sweep(Precision precision);

WallResult relative_error_sweep(const WallExperimentConfig& config);

double machine_epsilon(Precision precision);

/// Step minimizing the error model h^2 + eps/h, i.e. (eps/2)^(1/3). This is
/// the labeled model overlay, not measured ground truth.
double predicted_wall(double machine_epsilon);

/// Model curves per h: relative truncation h^2 (exact for x^4 at x=1) and
/// roundoff eps/h.
ExperimentTable theoretical_error_curves(const std::vector<double>& h_values,
                                         double machine_epsilon);

/// Full sweep table with model columns:
/// (h, relative_error, truncation_model, roundoff_model, precision).
ExperimentTable sweep_table(const WallExperimentConfig& config);

}  // namespace numlab::fdwall
