// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "numlab/fd_wall.hpp"

using namespace numlab;
using namespace numlab::fdwall;

namespace {

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("centered difference at exactly representable steps") {
  // (1.5^4 - 0.5^4) / 1.0 = 5.0625 - 0.0625, every operation exact in binary64
  CHECK(centered_difference(0.5, Precision::binary64) == 5.0);
  // (1.1^4 - 0.9^4) / 0.2 = 4.04 by exact rational arithmetic; f^(5) = 0 so
  // only rounding separates the computed value from it
  CHECK(centered_difference(0.1, Precision::binary64) ==
        doctest::Approx(4.04).epsilon(1e-12));
}

TEST_CASE("difference quotient approaches the analytic derivative") {
  CHECK(centered_difference(1e-4, Precision::binary64) == doctest::Approx(4.0).epsilon(1e-7));
}

TEST_CASE("relative error follows the exact h^2 law before the wall") {
  WallExperimentConfig config;
  config.precision = Precision::binary64;
  config.h_values = {1e-1};
  const auto result = relative_error_sweep(config);
  CHECK(result.rows[0].relative_error == doctest::Approx(1e-2).epsilon(1e-10));
}

TEST_CASE("step underflow raises a domain error") {
  CHECK_THROWS_AS(centered_difference(1e-300, Precision::binary32), std::domain_error);
  CHECK_THROWS_AS(centered_difference(0.0, Precision::binary64), std::domain_error);
  CHECK_THROWS_AS(centered_difference(-0.1, Precision::binary64), std::domain_error);
}

TEST_CASE("config validation") {
  WallExperimentConfig config;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);  // empty sweep
  config.h_values = {1e-1, 1e-1};
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);  // not decreasing
  config.h_values = {1e-1, -1e-2};
  CHECK_THROWS_AS(config.validate(), std::domain_error);
}

TEST_CASE("binary64 sweep walls inside the published window") {
  WallExperimentConfig config;
  config.precision = Precision::binary64;
  config.h_values = default_h_sweep(Precision::binary64);
  const auto result = relative_error_sweep(config);
  CHECK(result.wall_h >= 1e-7);
  CHECK(result.wall_h <= 1e-5);
  // interior argmin: the sweep spans the wall
  CHECK(result.wall_index > 0);
  CHECK(result.wall_index < result.rows.size() - 1);

  // pre-wall log-log slope 2.0 +/- 0.05 over h in [1e-3, 1e-1]
  std::vector<double> lx, ly;
  for (const auto& row : result.rows) {
    if (row.h >= 1e-3 && row.h <= 1e-1) {
      lx.push_back(std::log10(row.h));
      ly.push_back(std::log10(row.relative_error));
    }
  }
  REQUIRE(lx.size() >= 10);
  CHECK(fit_slope(lx, ly) == doctest::Approx(2.0).epsilon(0.025));

  // roundoff dominance: below wall_h/10 the error exceeds the wall minimum
  const double wall_error = result.rows[result.wall_index].relative_error;
  for (const auto& row : result.rows) {
    if (row.h < result.wall_h / 10.0) {
      CHECK(row.relative_error > wall_error);
    }
  }
}

TEST_CASE("binary32 sweep walls inside the published window") {
  WallExperimentConfig config;
  config.precision = Precision::binary32;
  config.h_values = default_h_sweep(Precision::binary32);
  const auto result = relative_error_sweep(config);
  CHECK(result.wall_h >= 1e-4);
  CHECK(result.wall_h <= 1e-2);
  CHECK(result.wall_index > 0);
  CHECK(result.wall_index < result.rows.size() - 1);
}

TEST_CASE("precision ordering: the binary32 wall sits at least two decades higher") {
  WallExperimentConfig c64;
  c64.precision = Precision::binary64;
  c64.h_values = default_h_sweep(Precision::binary64);
  WallExperimentConfig c32;
  c32.precision = Precision::binary32;
  c32.h_values = default_h_sweep(Precision::binary32);
  const double wall64 = relative_error_sweep(c64).wall_h;
  const double wall32 = relative_error_sweep(c32).wall_h;
  CHECK(wall32 >= 100.0 * wall64);
}

TEST_CASE("theoretical error curves and the predicted wall") {
  const auto table = theoretical_error_curves({1e-2}, machine_epsilon(Precision::binary64));
  CHECK(table.number_at(0, table.column_index("truncation_model")) ==
        doctest::Approx(1e-4).epsilon(1e-12));

  // minimizing h^2 + eps/h gives h* = (eps/2)^(1/3); check against a scan
  for (const double eps : {machine_epsilon(Precision::binary64),
                           machine_epsilon(Precision::binary32)}) {
    const double predicted = predicted_wall(eps);
    double best_h = 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 12000; ++i) {
      const double h = std::pow(10.0, -1.0 - 11.0 * i / 12000.0);
      const double model = h * h + eps / h;
      if (model < best) {
        best = model;
        best_h = h;
      }
    }
    CHECK(predicted == doctest::Approx(best_h).epsilon(0.01));
  }
  CHECK(predicted_wall(std::numeric_limits<double>::epsilon()) ==
        doctest::Approx(4.8e-6).epsilon(0.01));
  CHECK(predicted_wall(static_cast<double>(std::numeric_limits<float>::epsilon())) ==
        doctest::Approx(3.9e-3).epsilon(0.01));
}

TEST_CASE("sweep tables are bit-stable across runs") {
  WallExperimentConfig config;
  config.precision = Precision::binary64;
  config.h_values = default_h_sweep(Precision::binary64);
  CHECK(sweep_table(config).to_csv() == sweep_table(config).to_csv());
}
