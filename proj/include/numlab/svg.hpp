// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "numlab/table.hpp"

namespace numlab {

enum class PlotKind { loglog_lines, histogram_overlay };

/// Declarative plot of an ExperimentTable.
///
/// loglog_lines:       x_column against each y_column on log-log axes
///                     (non-positive points are dropped).
/// histogram_overlay:  rows are split by group_column; per group the
///                     value_column is drawn as a step curve and the optional
///                     overlay_column as a smooth curve (NaN cells skipped).
struct PlotSpec {
  PlotKind kind = PlotKind::loglog_lines;
  std::string title;
  std::string x_column;
  std::vector<std::string> y_columns;
  std::string group_column;
  std::string value_column;
  std::string overlay_column;
};

/// Renders a self-contained SVG document; output bytes are a pure function
/// of (table, spec). Throws std::invalid_argument for an empty table or a
/// schema incompatible with the plot kind.
std::string render_svg(const ExperimentTable& table, const PlotSpec& spec);

}  // namespace numlab
