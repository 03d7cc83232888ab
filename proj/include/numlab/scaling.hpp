// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "numlab/table.hpp"

namespace numlab::scaling {

/// Power law error(N) = prefactor * (N / critical_scale)^(-exponent_alpha).
///
/// The canonical two-parameter form absorbs multiplicative prefactors into
/// the critical scale via N_c = c^(1/alpha); `prefactor` stays at 1 for every
/// catalog law and exists only for models that keep an explicit constant in
/// front.
struct ScalingLaw {
  std::string label;
  double exponent_alpha = 0.0;
  double critical_scale = 0.0;
  double prefactor = 1.0;

  void validate() const;  // throws std::domain_error
};

enum class Phenomenon { propagation, diffusion, all_to_all };

/// Grid discretization method of order p in d spatial dimensions.
struct GridMethodSpec {
  int order_p = 2;
  int dimension_d = 1;
  Phenomenon phenomenon = Phenomenon::propagation;

  void validate() const;
  /// d+1 for propagation, d+2 for diffusion, 2d+1 for all-to-all coupling.
  int computational_dimension() const;
};

enum class ResourceAxis { mesh_per_dim, total_points, cost };

/// Information vs data-size law I = (D / data_critical)^exponent.
struct InformationLaw {
  double exponent = 0.1;
  double data_critical = 1.0;

  void validate() const;  // exponent in (0, 1]
};

/// Modeled error at a resource level; strictly decreasing in the resource.
double error_at(const ScalingLaw& law, double resource);

/// Multiplicative resource increase needed to shrink the error by `factor`:
/// factor^(1/alpha).
double resource_multiplier(const ScalingLaw& law, double error_reduction_factor);

/// Error-decay exponent of a grid method against the chosen resource axis:
/// p per mesh point per dimension, p/d per total point, p/d4 per unit cost.
double grid_error_exponent(const GridMethodSpec& spec, ResourceAxis axis);

/// Monte Carlo beats an order-p grid method iff d > 2p (strict).
bool mc_beats_grid(int order_p, int dimension_d);

/// Centered-difference error model (L/l)^2 * N^(-2); critical size N_c = L/l.
double derivative_error_model(double domain_L, double smallest_scale_l, long mesh_N);

/// Time for the information to double when the data size doubles `rate`
/// times per unit time: 1 / (exponent * rate).
double information_doubling_time(const InformationLaw& law,
                                 double data_growth_doublings_per_unit_time);

/// Geometric grid from lo to hi with `points_per_decade` subintervals per
/// decade (so 10 gives 11 points per decade counting both endpoints).
std::vector<double> geometric_grid(double lo, double hi, int points_per_decade);

/// One row per grid point, one error column per law.
ExperimentTable scaling_comparison_table(const std::vector<ScalingLaw>& laws,
                                         const std::vector<double>& resource_grid);

/// One row per law: its parameters and resource_multiplier(law, factor).
ExperimentTable multiplier_table(const std::vector<ScalingLaw>& laws, double factor);

/// Built-in law catalog: the reference law, the three published loss-scaling
/// triples (parameters / data / compute), and the two Monte Carlo variants.
const std::vector<ScalingLaw>& builtin_catalog();
const ScalingLaw& catalog_law(std::string_view label);  // throws std::invalid_argument

/// JSON (de)serialization of a law catalog; import rejects unknown keys.
std::string catalog_to_json(const std::vector<ScalingLaw>& laws);
std::vector<ScalingLaw> catalog_from_json(const std::string& text);

}  // namespace numlab::scaling
