// SPDX-License-Identifier: Apache-2.0
#include "numlab/table.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace numlab {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

ExperimentTable::ExperimentTable(std::vector<Column> columns)
    : columns_(std::move(columns)) {
  if (columns_.empty()) {
    throw std::invalid_argument("experiment table needs at least one column");
  }
}

void ExperimentTable::add_metadata(std::string key, std::string value) {
  metadata_.emplace_back(std::move(key), std::move(value));
}

void ExperimentTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) {
    throw std::invalid_argument("row arity " + std::to_string(row.size()) +
                                " does not match schema arity " +
                                std::to_string(columns_.size()));
  }
  rows_.push_back(std::move(row));
}

std::size_t ExperimentTable::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name == name) return i;
  }
  throw std::invalid_argument("no column named '" + std::string(name) + "'");
}

double ExperimentTable::number_at(std::size_t row, std::size_t col) const {
  return std::get<double>(rows_.at(row).at(col));
}

const std::string& ExperimentTable::text_at(std::size_t row, std::size_t col) const {
  return std::get<std::string>(rows_.at(row).at(col));
}

std::string ExperimentTable::to_csv() const {
  std::string out;
  for (const auto& [key, value] : metadata_) {
    out += "# ";
    out += key;
    out += '=';
    out += value;
    out += '\n';
  }
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i > 0) out += ',';
    out += columns_[i].name;
    out += '(';
    out += columns_[i].unit;
    out += ')';
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      if (const double* num = std::get_if<double>(&row[i])) {
        out += format_double(*num);
      } else {
        out += std::get<std::string>(row[i]);
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace numlab
