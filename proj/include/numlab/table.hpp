// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace numlab {

/// Column of an experiment table; headers are emitted as `name(unit)`.
struct Column {
  std::string name;
  std::string unit;  // "1" for dimensionless
};

using Cell = std::variant<double, std::string>;

/// Shortest round-trip decimal representation (std::to_chars).
std::string format_double(double value);

/// Tabular experiment output: an ordered column schema, rows, and a metadata
/// block that is echoed as `# key=value` comment lines ahead of the CSV
/// header. Output bytes are a pure function of the content.
class ExperimentTable {
 public:
  explicit ExperimentTable(std::vector<Column> columns);

  void add_metadata(std::string key, std::string value);
  void add_row(std::vector<Cell> row);  // throws std::invalid_argument on arity mismatch

  const std::vector<Column>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }
  const std::vector<std::pair<std::string, std::string>>& metadata() const noexcept {
    return metadata_;
  }

  std::size_t column_index(std::string_view name) const;  // throws if absent
  double number_at(std::size_t row, std::size_t col) const;
  const std::string& text_at(std::size_t row, std::size_t col) const;

  /// CSV dialect: comma separators, LF line endings, `name(unit)` header
  /// tokens, floats as shortest round-trip decimals.
  std::string to_csv() const;

 private:
  std::vector<Column> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::pair<std::string, std::string>> metadata_;
};

}  // namespace numlab
