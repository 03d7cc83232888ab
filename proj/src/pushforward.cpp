// SPDX-License-Identifier: Apache-2.0
#include "numlab/pushforward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "numlab/errors.hpp"
#include "numlab/rng.hpp"

namespace numlab::pushforward {

namespace {

double standard_normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace

void LayerSpec::validate() const {
  if (weights.rows() == 0 || weights.rows() != weights.cols()) {
    throw std::invalid_argument("weight matrix must be square and non-empty");
  }
  if (bias.size() != weights.rows()) {
    throw std::invalid_argument("bias dimension does not match the weight matrix");
  }
  if (layer_count < 1) {
    throw std::invalid_argument("layer count must be >= 1");
  }
}

LayerSpec LayerSpec::scalar(double weight, Activation activation, int layer_count) {
  LayerSpec spec;
  spec.weights = Eigen::MatrixXd::Constant(1, 1, weight);
  spec.bias = Eigen::VectorXd::Zero(1);
  spec.activation = activation;
  spec.layer_count = layer_count;
  return spec;
}

int InputDensity::dim() const {
  return kind == Kind::gaussian_iid ? static_cast<int>(mean.size()) : 1;
}

void InputDensity::validate() const {
  if (kind == Kind::gaussian_iid) {
    if (mean.size() == 0) throw std::invalid_argument("gaussian input needs a mean vector");
    if (!(sigma > 0.0)) throw std::domain_error("sigma must be positive");
    return;
  }
  if (table_x.size() < 2 || table_x.size() != table_density.size()) {
    throw std::invalid_argument("tabulated density needs matching (x, density) nodes");
  }
  for (std::size_t i = 0; i < table_x.size(); ++i) {
    if (i > 0 && !(table_x[i] > table_x[i - 1])) {
      throw std::invalid_argument("tabulated x nodes must be strictly increasing");
    }
    if (table_density[i] < 0.0) {
      throw std::domain_error("tabulated density values must be non-negative");
    }
  }
}

double InputDensity::density(const Eigen::VectorXd& x) const {
  validate();
  if (kind == Kind::gaussian_iid) {
    if (x.size() != mean.size()) throw std::invalid_argument("dimension mismatch");
    double p = 1.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      p *= standard_normal_pdf((x[i] - mean[i]) / sigma) / sigma;
    }
    return p;
  }
  if (x.size() != 1) throw std::invalid_argument("tabulated density is one-dimensional");
  const double v = x[0];
  if (v <= table_x.front() || v >= table_x.back()) return 0.0;
  const auto upper = std::upper_bound(table_x.begin(), table_x.end(), v);
  const std::size_t hi = static_cast<std::size_t>(upper - table_x.begin());
  const std::size_t lo = hi - 1;
  const double t = (v - table_x[lo]) / (table_x[hi] - table_x[lo]);
  return table_density[lo] + t * (table_density[hi] - table_density[lo]);
}

InputDensity InputDensity::standard_normal(int n) {
  return gaussian(Eigen::VectorXd::Zero(n), 1.0);
}

InputDensity InputDensity::gaussian(Eigen::VectorXd mean, double sigma) {
  InputDensity input;
  input.kind = Kind::gaussian_iid;
  input.mean = std::move(mean);
  input.sigma = sigma;
  input.validate();
  return input;
}

InputDensity InputDensity::tabulated(std::vector<double> x, std::vector<double> density) {
  InputDensity input;
  input.kind = Kind::custom_tabulated;
  input.table_x = std::move(x);
  input.table_density = std::move(density);
  input.validate();
  return input;
}

void OutputGrid::validate() const {
  if (axes.empty()) throw std::invalid_argument("output grid needs at least one axis");
  for (const auto& axis : axes) {
    if (axis.empty()) throw std::invalid_argument("output grid axis is empty");
    for (std::size_t i = 1; i < axis.size(); ++i) {
      if (!(axis[i] > axis[i - 1])) {
        throw std::invalid_argument("grid axis points must be strictly increasing");
      }
    }
  }
}

std::size_t OutputGrid::size() const {
  std::size_t n = 1;
  for (const auto& axis : axes) n *= axis.size();
  return n;
}

Eigen::VectorXd OutputGrid::point(std::size_t flat_index) const {
  Eigen::VectorXd y(dim());
  for (int axis = dim() - 1; axis >= 0; --axis) {
    const std::size_t len = axes[static_cast<std::size_t>(axis)].size();
    y[axis] = axes[static_cast<std::size_t>(axis)][flat_index % len];
    flat_index /= len;
  }
  return y;
}

double OutputGrid::weight(std::size_t flat_index) const {
  double w = 1.0;
  for (int axis = dim() - 1; axis >= 0; --axis) {
    const auto& points = axes[static_cast<std::size_t>(axis)];
    const std::size_t len = points.size();
    const std::size_t i = flat_index % len;
    flat_index /= len;
    if (len == 1) continue;
    double local;
    if (i == 0) {
      local = 0.5 * (points[1] - points[0]);
    } else if (i == len - 1) {
      local = 0.5 * (points[len - 1] - points[len - 2]);
    } else {
      local = 0.5 * (points[i + 1] - points[i - 1]);
    }
    w *= local;
  }
  return w;
}

OutputGrid OutputGrid::uniform(double lo, double hi, int count) {
  if (count < 2 || !(hi > lo)) {
    throw std::invalid_argument("uniform grid needs count >= 2 and hi > lo");
  }
  std::vector<double> axis(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    axis[static_cast<std::size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return OutputGrid{{std::move(axis)}};
}

OutputGrid OutputGrid::bin_centers(double lo, double hi, int bins) {
  if (bins < 1 || !(hi > lo)) {
    throw std::invalid_argument("bin grid needs bins >= 1 and hi > lo");
  }
  const double width = (hi - lo) / bins;
  std::vector<double> axis(static_cast<std::size_t>(bins));
  for (int i = 0; i < bins; ++i) {
    axis[static_cast<std::size_t>(i)] = lo + width * (static_cast<double>(i) + 0.5);
  }
  return OutputGrid{{std::move(axis)}};
}

std::vector<double> EmpiricalDistribution::coordinate(int index) const {
  if (index < 0 || samples.empty() || index >= samples.front().size()) {
    throw std::invalid_argument("coordinate index out of range");
  }
  std::vector<double> values;
  values.reserve(samples.size());
  for (const auto& sample : samples) values.push_back(sample[index]);
  return values;
}

Eigen::VectorXd forward(const LayerSpec& layer, const Eigen::VectorXd& x) {
  layer.validate();
  if (x.size() != layer.weights.rows()) {
    throw std::invalid_argument("input dimension does not match the layer");
  }
  Eigen::VectorXd z = x;
  for (int pass = 0; pass < layer.layer_count; ++pass) {
    Eigen::VectorXd u = layer.weights * z - layer.bias;
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      u[i] = activate(layer.activation, u[i]);
    }
    z = std::move(u);
  }
  return z;
}

double log_jacobian(const LayerSpec& layer, const Eigen::VectorXd& x) {
  layer.validate();
  if (layer.layer_count != 1) {
    throw std::invalid_argument("log_jacobian is defined for a single layer");
  }
  if (x.size() != layer.weights.rows()) {
    throw std::invalid_argument("input dimension does not match the layer");
  }
  const double det = layer.weights.determinant();
  if (det == 0.0) {
    throw std::domain_error("weight matrix is singular");
  }
  double log_det = std::log(std::fabs(det));
  const Eigen::VectorXd z = layer.weights * x - layer.bias;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double slope = activate_derivative(layer.activation, z[i]);
    if (slope == 0.0) {
      throw SingularJacobianError(static_cast<std::size_t>(i),
                                  "activation derivative vanishes at coordinate " +
                                      std::to_string(i));
    }
    log_det += std::log(std::fabs(slope));
  }
  return log_det;
}

PushforwardDensity analytic_pushforward(const LayerSpec& layer, const InputDensity& input,
                                        const OutputGrid& grid) {
  layer.validate();
  input.validate();
  grid.validate();
  if (layer.layer_count != 1) {
    throw std::invalid_argument("analytic pushforward is defined for a single layer");
  }
  if (!strictly_monotone(layer.activation)) {
    throw std::invalid_argument("analytic pushforward needs a strictly monotone activation");
  }
  if (grid.dim() != layer.dim() || input.dim() != layer.dim()) {
    throw std::invalid_argument("grid/input dimension does not match the layer");
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(layer.weights);
  if (!lu.isInvertible()) {
    throw std::domain_error("weight matrix is not invertible");
  }
  const double log_abs_det_w = std::log(std::fabs(layer.weights.determinant()));

  PushforwardDensity density;
  density.grid = grid;
  density.values.resize(grid.size());
  double integral = 0.0;
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const Eigen::VectorXd y = grid.point(idx);
    Eigen::VectorXd z(y.size());
    double log_jac = log_abs_det_w;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      if (!in_open_range(layer.activation, y[i])) {
        throw std::out_of_range("grid point outside the activation range at coordinate " +
                                std::to_string(i));
      }
      z[i] = activate_inverse(layer.activation, y[i]);
      log_jac += std::log(activate_derivative(layer.activation, z[i]));
    }
    const Eigen::VectorXd x = lu.solve(z + layer.bias);
    const double value = input.density(x) * std::exp(-log_jac);
    density.values[idx] = value;
    integral += value * grid.weight(idx);
  }
  density.normalization_check = integral;
  return density;
}

EmpiricalDistribution sample_pushforward(const LayerSpec& layer, const InputDensity& input,
                                         std::size_t n_samples, std::uint64_t seed) {
  layer.validate();
  input.validate();
  if (n_samples < 1) throw std::invalid_argument("need at least one sample");
  if (input.dim() != layer.dim()) {
    throw std::invalid_argument("input dimension does not match the layer");
  }
  rng::Stream stream(seed);
  const int n = layer.dim();

  // CDF nodes for the tabulated branch (piecewise-linear density).
  std::vector<double> cdf;
  if (input.kind == InputDensity::Kind::custom_tabulated) {
    cdf.assign(input.table_x.size(), 0.0);
    for (std::size_t i = 1; i < input.table_x.size(); ++i) {
      cdf[i] = cdf[i - 1] + 0.5 * (input.table_density[i] + input.table_density[i - 1]) *
                                (input.table_x[i] - input.table_x[i - 1]);
    }
    if (!(cdf.back() > 0.0)) {
      throw std::domain_error("tabulated density has zero total mass");
    }
  }

  EmpiricalDistribution dist;
  dist.seed = seed;
  dist.samples.reserve(n_samples);
  for (std::size_t s = 0; s < n_samples; ++s) {
    Eigen::VectorXd draw(n);
    if (input.kind == InputDensity::Kind::gaussian_iid) {
      for (int i = 0; i < n; ++i) draw[i] = input.mean[i] + input.sigma * stream.normal();
    } else {
      const double target = stream.uniform01() * cdf.back();
      std::size_t hi = 1;
      while (hi + 1 < cdf.size() && cdf[hi] < target) ++hi;
      const double span = cdf[hi] - cdf[hi - 1];
      const double t = span > 0.0 ? (target - cdf[hi - 1]) / span : 0.0;
      draw[0] = input.table_x[hi - 1] + t * (input.table_x[hi] - input.table_x[hi - 1]);
    }
    dist.samples.push_back(forward(layer, draw));
  }

  dist.histograms.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const std::vector<double> values = dist.coordinate(i);
    double lo;
    double hi;
    if (layer.activation == Activation::tanh) {
      lo = -1.05;
      hi = 1.05;
    } else {
      const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
      const double span = *mx - *mn;
      const double pad = span > 0.0 ? 0.05 * span : 0.5;
      lo = *mn - pad;
      hi = *mx + pad;
    }
    dist.histograms.push_back(make_histogram(values, lo, hi, 101));
  }
  return dist;
}

Histogram make_histogram(std::span<const double> values, double lo, double hi, int bins) {
  if (bins < 1 || !(hi > lo)) {
    throw std::invalid_argument("histogram needs bins >= 1 and hi > lo");
  }
  Histogram hist;
  hist.edges.resize(static_cast<std::size_t>(bins) + 1);
  const double width = (hi - lo) / bins;
  for (int i = 0; i <= bins; ++i) {
    hist.edges[static_cast<std::size_t>(i)] = lo + width * i;
  }
  hist.counts.assign(static_cast<std::size_t>(bins), 0);
  for (double v : values) {
    if (v < lo || v > hi) {
      throw std::invalid_argument("histogram value outside the configured range");
    }
    auto bin = static_cast<std::size_t>((v - lo) / width);
    if (bin >= hist.counts.size()) bin = hist.counts.size() - 1;  // top edge inclusive
    ++hist.counts[bin];
  }
  return hist;
}

rou::MomentReport gaussianity_report(const EmpiricalDistribution& dist, int coordinate) {
  if (dist.size() < 100) {
    throw std::invalid_argument("gaussianity report needs at least 100 samples");
  }
  const std::vector<double> values = dist.coordinate(coordinate);
  return rou::moment_report(values, 4);
}

double excess_kurtosis(const rou::MomentReport& report) {
  return report.normalized_m(4) - 3.0;
}

ExperimentTable weight_sweep_table(const std::vector<double>& weights, Activation activation,
                                   std::size_t n_samples, std::uint64_t master_seed,
                                   int bins, double lo, double hi) {
  if (weights.empty()) throw std::invalid_argument("weight sweep needs at least one weight");
  ExperimentTable table({{"y_bin_center", "1"},
                         {"empirical_density", "1"},
                         {"analytic_density", "1"},
                         {"W", "1"},
                         {"activation", "text"}});
  const std::string activation_name = to_string(activation);
  for (std::size_t wi = 0; wi < weights.size(); ++wi) {
    const LayerSpec layer = LayerSpec::scalar(weights[wi], activation);
    const InputDensity input = InputDensity::standard_normal(1);
    const std::uint64_t seed = rng::derive_stream_seed(master_seed, "pushforward", wi);
    EmpiricalDistribution dist = sample_pushforward(layer, input, n_samples, seed);

    double use_lo = lo;
    double use_hi = hi;
    const std::vector<double> values = dist.coordinate(0);
    if (std::isnan(lo) || std::isnan(hi)) {
      const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
      const double span = *mx - *mn;
      const double pad = span > 0.0 ? 0.05 * span : 0.5;
      use_lo = *mn - pad;
      use_hi = *mx + pad;
    }
    const Histogram hist = make_histogram(values, use_lo, use_hi, bins);

    // Analytic overlay where the map is invertible and the bin center lies
    // inside the activation range; NaN elsewhere.
    std::vector<double> analytic(hist.bins(), std::numeric_limits<double>::quiet_NaN());
    if (strictly_monotone(activation) && weights[wi] != 0.0) {
      std::vector<double> in_range;
      std::vector<std::size_t> where;
      for (std::size_t b = 0; b < hist.bins(); ++b) {
        if (in_open_range(activation, hist.bin_center(b))) {
          in_range.push_back(hist.bin_center(b));
          where.push_back(b);
        }
      }
      if (!in_range.empty()) {
        const PushforwardDensity density =
            analytic_pushforward(layer, input, OutputGrid{{std::move(in_range)}});
        for (std::size_t j = 0; j < where.size(); ++j) {
          analytic[where[j]] = density.values[j];
        }
      }
    }
    for (std::size_t b = 0; b < hist.bins(); ++b) {
      table.add_row({hist.bin_center(b), hist.density(b, dist.size()), analytic[b],
                     weights[wi], activation_name});
    }
  }
  return table;
}

}  // namespace numlab::pushforward
