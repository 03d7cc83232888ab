// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "numlab/activations.hpp"
#include "numlab/rou.hpp"
#include "numlab/table.hpp"

namespace numlab::pushforward {

/// One dense layer y = f(W x - b), applied layer_count times.
struct LayerSpec {
  Eigen::MatrixXd weights;
  Eigen::VectorXd bias;
  Activation activation = Activation::tanh;
  int layer_count = 1;

  int dim() const { return static_cast<int>(weights.rows()); }
  void validate() const;

  /// N=1 convenience: scalar weight, zero bias.
  static LayerSpec scalar(double weight, Activation activation,
                          int layer_count = 1);
};

/// Input distribution over R^N. gaussian_iid has independent coordinates
/// with mean m_i and common sigma; custom_tabulated is a one-dimensional
/// piecewise-linear density given by (x, density) nodes.
struct InputDensity {
  enum class Kind { gaussian_iid, custom_tabulated };

  Kind kind = Kind::gaussian_iid;
  Eigen::VectorXd mean;
  double sigma = 1.0;
  std::vector<double> table_x;        // custom_tabulated only
  std::vector<double> table_density;  // custom_tabulated only

  int dim() const;
  void validate() const;
  double density(const Eigen::VectorXd& x) const;

  static InputDensity standard_normal(int n);
  static InputDensity gaussian(Eigen::VectorXd mean, double sigma);
  static InputDensity tabulated(std::vector<double> x, std::vector<double> density);
};

/// Tensor-product evaluation grid over output space (one axis per
/// coordinate, strictly increasing points).
struct OutputGrid {
  std::vector<std::vector<double>> axes;

  int dim() const { return static_cast<int>(axes.size()); }
  std::size_t size() const;
  Eigen::VectorXd point(std::size_t flat_index) const;  // row-major
  /// Trapezoid quadrature weight of the grid node.
  double weight(std::size_t flat_index) const;
  void validate() const;

  static OutputGrid uniform(double lo, double hi, int count);      // N=1 nodes
  static OutputGrid bin_centers(double lo, double hi, int bins);   // N=1 centers
};

struct PushforwardDensity {
  OutputGrid grid;
  std::vector<double> values;
  double normalization_check = 0.0;  // quadrature of `values` over grid
};

struct Histogram {
  std::vector<double> edges;            // bins + 1, uniform
  std::vector<std::uint64_t> counts;    // bins

  std::size_t bins() const { return counts.size(); }
  double bin_width() const { return edges[1] - edges[0]; }
  double bin_center(std::size_t i) const { return 0.5 * (edges[i] + edges[i + 1]); }
  double density(std::size_t i, std::size_t total) const {
    return static_cast<double>(counts[i]) / (static_cast<double>(total) * bin_width());
  }
};

/// Seeded sample set of output vectors plus per-coordinate histogram views.
struct EmpiricalDistribution {
  std::vector<Eigen::VectorXd> samples;
  std::uint64_t seed = 0;
  std::vector<Histogram> histograms;  // one per coordinate

  std::size_t size() const { return samples.size(); }
  std::vector<double> coordinate(int index) const;
};

/// Applies f(W x - b) elementwise, layer_count times.
Eigen::VectorXd forward(const LayerSpec& layer, const Eigen::VectorXd& x);

/// log|det J| = log|det W| + sum_i log|f'(z_i)| of the single-layer map at
/// x, with z = W x - b. Throws SingularJacobianError (with the coordinate)
/// when f'(z_i) = 0 and std::invalid_argument when layer_count != 1.
double log_jacobian(const LayerSpec& layer, const Eigen::VectorXd& x);

/// Change-of-variables density p_Y(y) = p_X(x(y)) / |det J|(x(y)) with
/// x(y) = W^{-1}(f^{-1}(y) + b). Requires a single invertible layer with a
/// strictly monotone activation and a grid inside the activation's range.
PushforwardDensity analytic_pushforward(const LayerSpec& layer, const InputDensity& input,
                                        const OutputGrid& grid);

/// Draws n_samples from the input density and pushes them through the layer;
/// bit-identical regeneration for identical (layer, input, n, seed).
EmpiricalDistribution sample_pushforward(const LayerSpec& layer, const InputDensity& input,
                                         std::size_t n_samples, std::uint64_t seed);

/// Moment report of one output coordinate (needs >= 100 samples); the
/// headline non-Gaussianity scalar is the excess kurtosis m_4 - 3.
rou::MomentReport gaussianity_report(const EmpiricalDistribution& dist, int coordinate = 0);

double excess_kurtosis(const rou::MomentReport& report);

/// Uniform histogram of scalar values; every value must fall within
/// [lo, hi] (the top edge is inclusive).
Histogram make_histogram(std::span<const double> values, double lo, double hi, int bins);

/// Weight sweep in the style of the bimodal-transition figure: scalar tanh
/// layers at each W, standard-normal input. Columns:
/// (y_bin_center, empirical_density, analytic_density, W, activation).
ExperimentTable weight_sweep_table(const std::vector<double>& weights, Activation activation,
                                   std::size_t n_samples, std::uint64_t master_seed,
                                   int bins = 101, double lo = -1.05, double hi = 1.05);

}  // namespace numlab::pushforward
