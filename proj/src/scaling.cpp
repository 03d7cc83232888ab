// SPDX-License-Identifier: Apache-2.0
#include "numlab/scaling.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace numlab::scaling {

void ScalingLaw::validate() const {
  if (!(exponent_alpha > 0.0)) {
    throw std::domain_error("scaling law '" + label + "': exponent must be positive");
  }
  if (!(critical_scale > 0.0)) {
    throw std::domain_error("scaling law '" + label + "': critical scale must be positive");
  }
  if (!(prefactor > 0.0)) {
    throw std::domain_error("scaling law '" + label + "': prefactor must be positive");
  }
}

void GridMethodSpec::validate() const {
  if (order_p < 1) throw std::domain_error("grid method order must be >= 1");
  if (dimension_d < 1) throw std::domain_error("grid dimension must be >= 1");
}

int GridMethodSpec::computational_dimension() const {
  validate();
  switch (phenomenon) {
    case Phenomenon::propagation: return dimension_d + 1;
    case Phenomenon::diffusion: return dimension_d + 2;
    case Phenomenon::all_to_all: return 2 * dimension_d + 1;
  }
  throw std::domain_error("unknown phenomenon");
}

void InformationLaw::validate() const {
  if (!(exponent > 0.0) || exponent > 1.0) {
    throw std::domain_error("information exponent must lie in (0, 1]");
  }
  if (!(data_critical > 0.0)) {
    throw std::domain_error("critical data size must be positive");
  }
}

double error_at(const ScalingLaw& law, double resource) {
  law.validate();
  if (!(resource > 0.0)) {
    throw std::domain_error("resource must be positive");
  }
  return law.prefactor * std::pow(resource / law.critical_scale, -law.exponent_alpha);
}

double resource_multiplier(const ScalingLaw& law, double error_reduction_factor) {
  law.validate();
  if (!(error_reduction_factor > 1.0)) {
    throw std::domain_error("error reduction factor must exceed 1");
  }
  return std::pow(error_reduction_factor, 1.0 / law.exponent_alpha);
}

double grid_error_exponent(const GridMethodSpec& spec, ResourceAxis axis) {
  spec.validate();
  const double p = static_cast<double>(spec.order_p);
  switch (axis) {
    case ResourceAxis::mesh_per_dim: return p;
    case ResourceAxis::total_points: return p / static_cast<double>(spec.dimension_d);
    case ResourceAxis::cost: return p / static_cast<double>(spec.computational_dimension());
  }
  throw std::domain_error("unknown resource axis");
}

bool mc_beats_grid(int order_p, int dimension_d) {
  GridMethodSpec spec{order_p, dimension_d, Phenomenon::propagation};
  spec.validate();
  return dimension_d > 2 * order_p;
}

double derivative_error_model(double domain_L, double smallest_scale_l, long mesh_N) {
  if (!(smallest_scale_l > 0.0) || !(domain_L > 0.0)) {
    throw std::domain_error("length scales must be positive");
  }
  if (smallest_scale_l > domain_L) {
    throw std::domain_error("smallest scale cannot exceed the domain size");
  }
  if (mesh_N < 1) throw std::domain_error("mesh size must be >= 1");
  const double n = static_cast<double>(mesh_N);
  const double ratio = domain_L / smallest_scale_l;
  return ratio * ratio / (n * n);
}

double information_doubling_time(const InformationLaw& law,
                                 double data_growth_doublings_per_unit_time) {
  law.validate();
  if (!(data_growth_doublings_per_unit_time > 0.0)) {
    throw std::domain_error("data growth rate must be positive");
  }
  return 1.0 / (law.exponent * data_growth_doublings_per_unit_time);
}

std::vector<double> geometric_grid(double lo, double hi, int points_per_decade) {
  if (!(lo > 0.0) || !(hi > lo)) {
    throw std::invalid_argument("grid bounds must satisfy 0 < lo < hi");
  }
  if (points_per_decade < 1) {
    throw std::invalid_argument("points per decade must be >= 1");
  }
  const double lg_lo = std::log10(lo);
  const double lg_hi = std::log10(hi);
  const auto steps = static_cast<long>(std::llround((lg_hi - lg_lo) * points_per_decade));
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(steps) + 1);
  for (long k = 0; k <= steps; ++k) {
    const double lg = lg_lo + (lg_hi - lg_lo) * static_cast<double>(k) /
                                  static_cast<double>(steps == 0 ? 1 : steps);
    grid.push_back(std::pow(10.0, lg));
  }
  return grid;
}

ExperimentTable scaling_comparison_table(const std::vector<ScalingLaw>& laws,
                                         const std::vector<double>& resource_grid) {
  if (laws.empty() || resource_grid.empty()) {
    throw std::invalid_argument("comparison table needs laws and a resource grid");
  }
  std::vector<Column> columns{{"resource", "1"}};
  for (const auto& law : laws) {
    law.validate();
    columns.push_back({"error_" + law.label, "1"});
  }
  ExperimentTable table(std::move(columns));
  for (double resource : resource_grid) {
    std::vector<Cell> row;
    row.reserve(laws.size() + 1);
    row.emplace_back(resource);
    for (const auto& law : laws) {
      row.emplace_back(error_at(law, resource));
    }
    table.add_row(std::move(row));
  }
  return table;
}

ExperimentTable multiplier_table(const std::vector<ScalingLaw>& laws, double factor) {
  if (laws.empty()) {
    throw std::invalid_argument("multiplier table needs at least one law");
  }
  ExperimentTable table({{"label", "text"},
                         {"alpha", "1"},
                         {"critical_scale", "1"},
                         {"factor", "1"},
                         {"resource_multiplier", "1"}});
  for (const auto& law : laws) {
    table.add_row({law.label, law.exponent_alpha, law.critical_scale, factor,
                   resource_multiplier(law, factor)});
  }
  return table;
}

const std::vector<ScalingLaw>& builtin_catalog() {
  static const std::vector<ScalingLaw> catalog = {
      {"reference", 0.1, 1e14},
      {"parameters", 0.075, 8.8e13},
      {"data", 0.095, 5.4e13},
      {"compute", 0.05, 2.3e8},
      {"mc", 0.5, 1e14},
      {"mc_realistic", 0.5, 1e9},
  };
  return catalog;
}

const ScalingLaw& catalog_law(std::string_view label) {
  for (const auto& law : builtin_catalog()) {
    if (law.label == label) return law;
  }
  throw std::invalid_argument("unknown catalog law '" + std::string(label) + "'");
}

std::string catalog_to_json(const std::vector<ScalingLaw>& laws) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& law : laws) {
    nlohmann::json entry{{"label", law.label},
                         {"alpha", law.exponent_alpha},
                         {"critical_scale", law.critical_scale}};
    if (law.prefactor != 1.0) entry["prefactor"] = law.prefactor;
    doc.push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

std::vector<ScalingLaw> catalog_from_json(const std::string& text) {
  const nlohmann::json doc = nlohmann::json::parse(text);
  if (!doc.is_array()) {
    throw std::invalid_argument("law catalog must be a JSON array");
  }
  std::vector<ScalingLaw> laws;
  laws.reserve(doc.size());
  for (const auto& entry : doc) {
    ScalingLaw law;
    for (const auto& [key, value] : entry.items()) {
      if (key == "label") {
        law.label = value.get<std::string>();
      } else if (key == "alpha") {
        law.exponent_alpha = value.get<double>();
      } else if (key == "critical_scale") {
        law.critical_scale = value.get<double>();
      } else if (key == "prefactor") {
        law.prefactor = value.get<double>();
      } else {
        throw std::invalid_argument("unknown key '" + key + "' in law catalog");
      }
    }
    law.validate();
    laws.push_back(std::move(law));
  }
  return laws;
}

}  // namespace numlab::scaling
