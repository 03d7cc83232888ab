// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "numlab/svg.hpp"
#include "numlab/table.hpp"

using namespace numlab;

TEST_CASE("format_double is shortest round-trip") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(4.04) == "4.04");
  CHECK(format_double(1e14) == "1e+14");
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(-2.5) == "-2.5");
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  // Round trip through the printed digits.
  const double value = 0.1 + 0.2;
  CHECK(std::stod(format_double(value)) == value);
}

TEST_CASE("csv dialect: metadata comments, name(unit) header, LF endings") {
  ExperimentTable table({{"h", "1"}, {"err", "1"}, {"tag", "text"}});
  table.add_metadata("seed", "0");
  table.add_row({0.5, 5.0, std::string("a")});
  table.add_row({0.25, 1.25, std::string("b")});
  const std::string csv = table.to_csv();
  CHECK(csv == "# seed=0\nh(1),err(1),tag(text)\n0.5,5,a\n0.25,1.25,b\n");
  CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("row arity is enforced") {
  ExperimentTable table({{"a", "1"}, {"b", "1"}});
  CHECK_THROWS_AS(table.add_row({1.0}), std::invalid_argument);
  CHECK_THROWS_AS(table.add_row({1.0, 2.0, 3.0}), std::invalid_argument);
  table.add_row({1.0, 2.0});
  CHECK(table.rows().size() == 1);
}

TEST_CASE("column lookup") {
  ExperimentTable table({{"x", "1"}, {"y", "m"}});
  CHECK(table.column_index("y") == 1);
  CHECK_THROWS_AS(table.column_index("z"), std::invalid_argument);
}

namespace {

ExperimentTable loglog_fixture() {
  ExperimentTable table({{"resource", "1"}, {"error_a", "1"}, {"error_b", "1"}});
  for (int i = 0; i <= 10; ++i) {
    const double x = std::pow(10.0, 14 + i);
    table.add_row({x, std::pow(x / 1e14, -0.1), std::pow(x / 1e14, -0.5)});
  }
  return table;
}

}  // namespace

TEST_CASE("svg output is deterministic and labeled") {
  const ExperimentTable table = loglog_fixture();
  PlotSpec spec;
  spec.kind = PlotKind::loglog_lines;
  spec.title = "fixture";
  spec.x_column = "resource";
  spec.y_columns = {"error_a", "error_b"};
  const std::string one = render_svg(table, spec);
  const std::string two = render_svg(table, spec);
  CHECK(one == two);
  CHECK(one.find("<svg") != std::string::npos);
  CHECK(one.find("resource (1)") != std::string::npos);
  CHECK(one.find("error_a") != std::string::npos);
  CHECK(one.find("polyline") != std::string::npos);
}

TEST_CASE("svg rejects empty tables and unknown columns") {
  ExperimentTable empty({{"x", "1"}, {"y", "1"}});
  PlotSpec spec;
  spec.kind = PlotKind::loglog_lines;
  spec.x_column = "x";
  spec.y_columns = {"y"};
  CHECK_THROWS_AS(render_svg(empty, spec), std::invalid_argument);

  const ExperimentTable table = loglog_fixture();
  PlotSpec bad = spec;
  bad.x_column = "missing";
  CHECK_THROWS_AS(render_svg(table, bad), std::invalid_argument);
}

TEST_CASE("svg loglog drops non-positive points rather than failing") {
  ExperimentTable table({{"x", "1"}, {"y", "1"}});
  table.add_row({1.0, 0.0});   // dropped
  table.add_row({10.0, 1.0});
  table.add_row({100.0, 0.1});
  PlotSpec spec;
  spec.kind = PlotKind::loglog_lines;
  spec.x_column = "x";
  spec.y_columns = {"y"};
  CHECK(render_svg(table, spec).find("polyline") != std::string::npos);

  ExperimentTable all_zero({{"x", "1"}, {"y", "1"}});
  all_zero.add_row({1.0, 0.0});
  CHECK_THROWS_AS(render_svg(all_zero, spec), std::invalid_argument);
}

TEST_CASE("histogram overlay renders one step curve per group") {
  ExperimentTable table({{"y_bin_center", "1"},
                         {"empirical_density", "1"},
                         {"analytic_density", "1"},
                         {"W", "1"},
                         {"activation", "text"}});
  for (double w : {0.1, 2.0}) {
    for (int b = 0; b < 8; ++b) {
      const double c = -0.7 + 0.2 * b;
      table.add_row({c, 0.5 + 0.1 * b, 0.45 + 0.1 * b, w, std::string("tanh")});
    }
  }
  PlotSpec spec;
  spec.kind = PlotKind::histogram_overlay;
  spec.x_column = "y_bin_center";
  spec.value_column = "empirical_density";
  spec.overlay_column = "analytic_density";
  spec.group_column = "W";
  const std::string svg = render_svg(table, spec);
  CHECK(svg.find("W=0.1") != std::string::npos);
  CHECK(svg.find("W=2") != std::string::npos);
  CHECK(svg.find("analytic") != std::string::npos);
}
