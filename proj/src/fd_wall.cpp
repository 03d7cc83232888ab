// SPDX-License-Identifier: Apache-2.0
#include "numlab/fd_wall.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace numlab::fdwall {

std::string to_string(Precision precision) {
  return precision == Precision::binary32 ? "binary32" : "binary64";
}

Precision precision_from_string(std::string_view name) {
  if (name == "binary32") return Precision::binary32;
  if (name == "binary64") return Precision::binary64;
  throw std::invalid_argument("unknown precision '" + std::string(name) + "'");
}

void WallExperimentConfig::validate() const {
  if (h_values.empty()) {
    throw std::invalid_argument("wall sweep needs at least one step size");
  }
  for (std::size_t i = 0; i < h_values.size(); ++i) {
    if (!(h_values[i] > 0.0)) {
      throw std::domain_error("step sizes must be positive");
    }
    if (i > 0 && !(h_values[i] < h_values[i - 1])) {
      throw std::invalid_argument("step sizes must be strictly decreasing");
    }
  }
}

namespace {

// All arithmetic in T, fourth power in fixed order for bit-reproducibility.
template <typename T>
double centered_difference_impl(double h, double eval_point) {
  const T hs = static_cast<T>(h);
  if (hs == T{0}) {
    throw std::domain_error("step underflows to zero in the working precision");
  }
  const T x = static_cast<T>(eval_point);
  const T xp = x + hs;
  const T xm = x - hs;
  const T fp = (xp * xp) * (xp * xp);
  const T fm = (xm * xm) * (xm * xm);
  return static_cast<double>((fp - fm) / (T{2} * hs));
}

double snap(double h, Precision precision) {
  return precision == Precision::binary32 ? static_cast<double>(static_cast<float>(h)) : h;
}

}  // namespace

double centered_difference(double h, Precision precision, double eval_point) {
  if (!(h > 0.0)) throw std::domain_error("step must be positive");
  return precision == Precision::binary32
             ? centered_difference_impl<float>(h, eval_point)
             : centered_difference_impl<double>(h, eval_point);
}

std::vector<double> default_h_sweep(Precision precision) {
  const double h_min = precision == Precision::binary32 ? 1e-7 : 1e-12;
  std::vector<double> sweep;
  for (int k = 0;; ++k) {
    const double h = std::pow(10.0, -1.0 - static_cast<double>(k) / 10.0);
    if (h < h_min * 0.999) break;
    sweep.push_back(h);
  }
  return sweep;
}

WallResult relative_error_sweep(const WallExperimentConfig& config) {
  config.validate();
  const double x = config.eval_point;
  const double exact = 4.0 * x * x * x;  // f'(x) for f = x^4
  if (exact == 0.0) {
    throw std::domain_error("relative error undefined where the derivative vanishes");
  }
  WallResult result;
  result.rows.reserve(config.h_values.size());
  for (double h : config.h_values) {
    const double snapped = snap(h, config.precision);
    const double cd = centered_difference(h, config.precision, x);
    const double rel = std::fabs(cd - exact) / std::fabs(exact);
    result.rows.push_back({snapped, rel});
  }
  result.wall_index = 0;
  for (std::size_t i = 1; i < result.rows.size(); ++i) {
    if (result.rows[i].relative_error < result.rows[result.wall_index].relative_error) {
      result.wall_index = i;
    }
  }
  result.wall_h = result.rows[result.wall_index].h;
  return result;
}

double machine_epsilon(Precision precision) {
  return precision == Precision::binary32
             ? static_cast<double>(std::numeric_limits<float>::epsilon())
             : std::numeric_limits<double>::epsilon();
}

double predicted_wall(double machine_epsilon) {
  if (!(machine_epsilon > 0.0)) {
    throw std::domain_error("machine epsilon must be positive");
  }
  return std::cbrt(machine_epsilon / 2.0);
}

ExperimentTable theoretical_error_curves(const std::vector<double>& h_values,
                                         double machine_epsilon) {
  if (h_values.empty()) {
    throw std::invalid_argument("model curves need at least one step size");
  }
  if (!(machine_epsilon > 0.0)) {
    throw std::domain_error("machine epsilon must be positive");
  }
  ExperimentTable table(
      {{"h", "1"}, {"truncation_model", "1"}, {"roundoff_model", "1"}});
  table.add_metadata("predicted_wall_h", format_double(predicted_wall(machine_epsilon)));
  for (double h : h_values) {
    if (!(h > 0.0)) throw std::domain_error("step sizes must be positive");
    table.add_row({h, h * h, machine_epsilon / h});
  }
  return table;
}

ExperimentTable sweep_table(const WallExperimentConfig& config) {
  const WallResult result = relative_error_sweep(config);
  const double eps = machine_epsilon(config.precision);
  ExperimentTable table({{"h", "1"},
                         {"relative_error", "1"},
                         {"truncation_model", "1"},
                         {"roundoff_model", "1"},
                         {"precision", "text"}});
  table.add_metadata("wall_h", format_double(result.wall_h));
  table.add_metadata("predicted_wall_h", format_double(predicted_wall(eps)));
  const std::string precision_name = to_string(config.precision);
  for (const auto& row : result.rows) {
    table.add_row({row.h, row.relative_error, row.h * row.h, eps / row.h, precision_name});
  }
  return table;
}

}  // namespace numlab::fdwall
