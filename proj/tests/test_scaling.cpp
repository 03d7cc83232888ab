// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "numlab/scaling.hpp"

using namespace numlab;
using namespace numlab::scaling;

namespace {

bool close_rel(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::max(std::fabs(a), std::fabs(b));
}

const ScalingLaw kReference{"reference", 0.1, 1e14};
const ScalingLaw kMonteCarlo{"mc", 0.5, 1e14};

}  // namespace

TEST_CASE("error_at examples") {
  CHECK(error_at(kReference, 1e14) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(error_at(kReference, 1e24) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(error_at(kMonteCarlo, 1e16) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK_THROWS_AS(error_at(kReference, 0.0), std::domain_error);
  CHECK_THROWS_AS(error_at(kReference, -1.0), std::domain_error);
}

TEST_CASE("resource_multiplier reproduces the published arithmetic") {
  CHECK(close_rel(resource_multiplier({"mc", 0.5, 1e14}, 10.0), 100.0, 1e-12));
  CHECK(close_rel(resource_multiplier({"ref", 0.1, 1e14}, 10.0), 1e10, 1e-12));
  CHECK(close_rel(resource_multiplier({"compute", 0.05, 2.3e8}, 10.0), 1e20, 1e-12));
  CHECK_THROWS_AS(resource_multiplier(kReference, 1.0), std::domain_error);
  CHECK_THROWS_AS(resource_multiplier(kReference, 0.5), std::domain_error);
}

TEST_CASE("grid_error_exponent per resource axis") {
  CHECK(grid_error_exponent({2, 1, Phenomenon::propagation}, ResourceAxis::mesh_per_dim) == 2.0);
  CHECK(grid_error_exponent({2, 4, Phenomenon::propagation}, ResourceAxis::total_points) == 0.5);
  CHECK(grid_error_exponent({2, 3, Phenomenon::diffusion}, ResourceAxis::cost) ==
        doctest::Approx(0.4).epsilon(1e-15));
  // d4 per phenomenon: d+1, d+2, 2d+1
  CHECK(GridMethodSpec{2, 3, Phenomenon::propagation}.computational_dimension() == 4);
  CHECK(GridMethodSpec{2, 3, Phenomenon::diffusion}.computational_dimension() == 5);
  CHECK(GridMethodSpec{2, 3, Phenomenon::all_to_all}.computational_dimension() == 7);
  CHECK_THROWS_AS(grid_error_exponent({0, 3, Phenomenon::diffusion}, ResourceAxis::cost),
                  std::domain_error);
}

TEST_CASE("mc_beats_grid is the strict d > 2p condition") {
  CHECK(mc_beats_grid(2, 5));
  CHECK_FALSE(mc_beats_grid(2, 4));  // boundary d = 2p
  CHECK(mc_beats_grid(1, 3));
}

TEST_CASE("crossover coherence with the total-points exponent") {
  for (int p = 1; p <= 4; ++p) {
    for (int d = 1; d <= 12; ++d) {
      const double exponent =
          grid_error_exponent({p, d, Phenomenon::propagation}, ResourceAxis::total_points);
      CHECK(mc_beats_grid(p, d) == (exponent < 0.5));
    }
  }
}

TEST_CASE("derivative_error_model") {
  CHECK(derivative_error_model(1.0, 1.0, 10) == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(derivative_error_model(100.0, 1.0, 100) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(derivative_error_model(10.0, 1.0, 1000) == doctest::Approx(1e-4).epsilon(1e-15));
  CHECK_THROWS_AS(derivative_error_model(1.0, 2.0, 10), std::domain_error);
}

TEST_CASE("information_doubling_time") {
  CHECK(information_doubling_time({0.1, 1.0}, 1.0) == doctest::Approx(10.0));
  CHECK(information_doubling_time({1.0, 1.0}, 1.0) == doctest::Approx(1.0));
  CHECK(information_doubling_time({0.1, 1.0}, 2.0) == doctest::Approx(5.0));
  CHECK_THROWS_AS(information_doubling_time({1.5, 1.0}, 1.0), std::domain_error);
}

TEST_CASE("error_at is strictly decreasing and exactly log-linear") {
  const auto grid = geometric_grid(1e14, 1e24, 10);
  double previous = error_at(kReference, grid.front());
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double current = error_at(kReference, grid[i]);
    CHECK(current < previous);
    previous = current;
  }
  // slope of log(error) vs log(resource) is exactly -alpha
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double slope = (std::log(error_at(kReference, grid[i])) -
                          std::log(error_at(kReference, grid[0]))) /
                         (std::log(grid[i]) - std::log(grid[0]));
    CHECK(close_rel(slope, -0.1, 1e-12));
  }
}

TEST_CASE("multiplier consistency: scaling the resource scales the error exactly") {
  for (const double factor : {2.0, 10.0, 100.0}) {
    for (const double resource : {1e14, 1e15}) {
      const double multiplier = resource_multiplier(kReference, factor);
      const double before = error_at(kReference, resource);
      const double after = error_at(kReference, multiplier * resource);
      CHECK(close_rel(before / after, factor, 1e-12));
    }
  }
}

TEST_CASE("built-in catalog reproduces the published constants exactly") {
  CHECK(catalog_law("parameters").exponent_alpha == 0.075);
  CHECK(catalog_law("parameters").critical_scale == 8.8e13);
  CHECK(catalog_law("data").exponent_alpha == 0.095);
  CHECK(catalog_law("data").critical_scale == 5.4e13);
  CHECK(catalog_law("compute").exponent_alpha == 0.05);
  CHECK(catalog_law("compute").critical_scale == 2.3e8);
  CHECK(catalog_law("reference").exponent_alpha == 0.1);
  CHECK(catalog_law("reference").critical_scale == 1e14);
  CHECK(catalog_law("mc").critical_scale == 1e14);
  CHECK(catalog_law("mc_realistic").critical_scale == 1e9);
  CHECK_THROWS_AS(catalog_law("nope"), std::invalid_argument);
}

TEST_CASE("comparison table matches the figure arithmetic") {
  const auto grid = geometric_grid(1e14, 1e24, 10);
  CHECK(grid.size() == 101);  // 11 points per decade, endpoints included
  const auto table = scaling_comparison_table({kReference, kMonteCarlo}, grid);
  CHECK(table.rows().size() == grid.size());
  const std::size_t ref_col = table.column_index("error_reference");
  const double first = table.number_at(0, ref_col);
  const double last = table.number_at(grid.size() - 1, ref_col);
  CHECK(close_rel(first / last, 10.0, 1e-9));  // factor 10 over the full span

  // single law, single point at N_c
  const auto single = scaling_comparison_table({kReference}, {1e14});
  CHECK(single.number_at(0, 1) == doctest::Approx(1.0).epsilon(1e-12));

  // MC variant with the lower critical scale
  const auto realistic = scaling_comparison_table({catalog_law("mc_realistic")}, {1e16});
  CHECK(realistic.number_at(0, 1) == doctest::Approx(3.1622776601683795e-4).epsilon(1e-12));

  CHECK_THROWS_AS(scaling_comparison_table({}, grid), std::invalid_argument);
  CHECK_THROWS_AS(scaling_comparison_table({kReference}, {}), std::invalid_argument);
}

TEST_CASE("law catalog JSON round trip") {
  const auto& catalog = builtin_catalog();
  const auto parsed = catalog_from_json(catalog_to_json(catalog));
  REQUIRE(parsed.size() == catalog.size());
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    CHECK(parsed[i].label == catalog[i].label);
    CHECK(parsed[i].exponent_alpha == catalog[i].exponent_alpha);
    CHECK(parsed[i].critical_scale == catalog[i].critical_scale);
    CHECK(parsed[i].prefactor == catalog[i].prefactor);
  }
}

TEST_CASE("law catalog import rejects unknown keys and bad values") {
  CHECK_THROWS_AS(catalog_from_json(R"([{"label":"x","alpha":0.1,"critical_scale":1.0,"extra":1}])"),
                  std::invalid_argument);
  CHECK_THROWS_AS(catalog_from_json(R"([{"label":"x","alpha":-0.1,"critical_scale":1.0}])"),
                  std::domain_error);
  CHECK_THROWS_AS(catalog_from_json(R"({"not":"an array"})"), std::invalid_argument);
}

TEST_CASE("scaling law invariants") {
  const ScalingLaw zero_exponent{"bad", 0.0, 1e14};
  const ScalingLaw zero_scale{"bad", 0.1, 0.0};
  CHECK_THROWS_AS(zero_exponent.validate(), std::domain_error);
  CHECK_THROWS_AS(zero_scale.validate(), std::domain_error);
  // error at the critical scale is exactly one
  CHECK(error_at(kReference, kReference.critical_scale) == 1.0);
}
