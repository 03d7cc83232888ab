// SPDX-License-Identifier: Apache-2.0
#include "numlab/rou.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "numlab/errors.hpp"

namespace numlab::rou {

namespace {

void require_even_order(int max_order) {
  if (max_order < 4 || max_order % 2 != 0) {
    throw std::invalid_argument("max order must be an even integer >= 4");
  }
}

double lookup(const std::map<int, double>& values, int k, const char* what) {
  auto it = values.find(k);
  if (it == values.end()) {
    throw std::invalid_argument(std::string(what) + " of order " + std::to_string(k) +
                                " not present in report");
  }
  return it->second;
}

}  // namespace

double MomentReport::central(int k) const { return lookup(central_moments, k, "central moment"); }
double MomentReport::normalized_m(int k) const { return lookup(normalized, k, "normalized moment"); }
double MomentReport::amplification_a(int k) const {
  return lookup(amplification, k, "amplification coefficient");
}

MomentReport moment_report(std::span<const double> samples, int max_order) {
  require_even_order(max_order);
  if (samples.size() < 2) {
    throw std::invalid_argument("moment report needs at least two samples");
  }
  const double n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= n;

  MomentReport report;
  report.mean = mean;
  report.max_order = max_order;
  for (int k = 2; k <= max_order; k += 2) {
    double sum = 0.0;
    for (double x : samples) {
      const double d = x - mean;
      double power = d;
      for (int j = 1; j < k; ++j) power *= d;
      sum += power;
    }
    report.central_moments[k] = sum / n;
  }
  const double variance = report.central_moments[2];
  if (!(variance > 0.0)) {
    throw DegenerateDistributionError("sample variance is zero; normalized moments undefined");
  }
  for (int k = 2; k <= max_order; k += 2) {
    const double mk = report.central_moments[k] / std::pow(variance, k / 2.0);
    report.normalized[k] = mk;
    report.amplification[k] = std::pow(mk, 1.0 / k);
  }
  return report;
}

double gaussian_normalized_moment(int k) {
  if (k < 2 || k % 2 != 0) {
    throw std::invalid_argument("Gaussian normalized moments are defined for even k >= 2");
  }
  double value = 1.0;
  for (int j = k - 1; j > 1; j -= 2) value *= static_cast<double>(j);
  return value;
}

std::map<int, double> gaussian_amplification(int max_order) {
  require_even_order(max_order);
  std::map<int, double> coefficients;
  for (int k = 2; k <= max_order; k += 2) {
    coefficients[k] = std::pow(gaussian_normalized_moment(k), 1.0 / k);
  }
  return coefficients;
}

double truncated_cauchy_mass(double bound_L) {
  if (!(bound_L > 0.0)) throw std::domain_error("Cauchy bound must be positive");
  return (2.0 / std::numbers::pi) * std::atan(bound_L);
}

double truncated_cauchy_raw_moment(double bound_L, int k) {
  if (!(bound_L > 0.0)) throw std::domain_error("Cauchy bound must be positive");
  if (k < 0 || k % 2 != 0) {
    throw std::invalid_argument("truncated Cauchy moments are defined for even k >= 0");
  }
  if (k == 0) return truncated_cauchy_mass(bound_L);
  // x^k/(1+x^2) = sum_{j=1}^{k/2} (-1)^(j-1) x^(k-2j) + (-1)^(k/2)/(1+x^2)
  double integral = 0.0;
  double sign = 1.0;
  for (int j = 1; 2 * j <= k; ++j) {
    const int power = k - 2 * j + 1;
    integral += sign * std::pow(bound_L, power) / static_cast<double>(power);
    sign = -sign;
  }
  integral += sign * std::atan(bound_L);
  return (2.0 / std::numbers::pi) * integral;
}

MomentReport truncated_cauchy_moments(const TruncatedCauchySpec& spec, int max_order) {
  require_even_order(max_order);
  if (!(spec.bound_L >= 1.0)) {
    throw std::domain_error("truncated Cauchy bound must be >= 1");
  }
  const double mass = spec.normalized ? truncated_cauchy_mass(spec.bound_L) : 1.0;
  MomentReport report;
  report.mean = 0.0;  // symmetric density
  report.max_order = max_order;
  for (int k = 2; k <= max_order; k += 2) {
    report.central_moments[k] = truncated_cauchy_raw_moment(spec.bound_L, k) / mass;
  }
  const double variance = report.central_moments[2];
  for (int k = 2; k <= max_order; k += 2) {
    const double mk = report.central_moments[k] / std::pow(variance, k / 2.0);
    report.normalized[k] = mk;
    report.amplification[k] = std::pow(mk, 1.0 / k);
  }
  return report;
}

double truncated_cauchy_sample(rng::Stream& stream, double bound_L) {
  if (!(bound_L > 0.0)) throw std::domain_error("Cauchy bound must be positive");
  return std::tan(stream.uniform_symmetric() * std::atan(bound_L));
}

double sample_inflation(const MomentReport& target, const MomentReport& baseline,
                        int order_k) {
  const double ratio = target.amplification_a(order_k) / baseline.amplification_a(order_k);
  return ratio * ratio;
}

ExperimentTable empirical_rou_convergence(const TruncatedCauchySpec& spec,
                                          std::span<const std::size_t> sample_sizes,
                                          std::uint64_t seed) {
  if (sample_sizes.empty()) {
    throw std::invalid_argument("convergence experiment needs sample sizes");
  }
  for (std::size_t i = 1; i < sample_sizes.size(); ++i) {
    if (sample_sizes[i] <= sample_sizes[i - 1]) {
      throw std::invalid_argument("sample sizes must be increasing");
    }
  }
  const double a4_cauchy = truncated_cauchy_moments(spec, 4).amplification_a(4);
  const double a4_gauss = std::pow(3.0, 0.25);

  ExperimentTable table({{"n", "count"},
                         {"a4_estimate", "1"},
                         {"a4_exact", "1"},
                         {"abs_error", "1"},
                         {"distribution", "text"}});
  std::uint64_t stream_index = 0;
  for (std::size_t n : sample_sizes) {
    rng::Stream cauchy_stream(seed, "rou.convergence.cauchy", stream_index);
    rng::Stream gauss_stream(seed, "rou.convergence.gauss", stream_index);
    ++stream_index;

    std::vector<double> samples(n);
    for (double& x : samples) x = truncated_cauchy_sample(cauchy_stream, spec.bound_L);
    const double est_cauchy = moment_report(samples, 4).amplification_a(4);
    table.add_row({static_cast<double>(n), est_cauchy, a4_cauchy,
                   std::fabs(est_cauchy - a4_cauchy), std::string("truncated_cauchy")});

    for (double& x : samples) x = gauss_stream.normal();
    const double est_gauss = moment_report(samples, 4).amplification_a(4);
    table.add_row({static_cast<double>(n), est_gauss, a4_gauss,
                   std::fabs(est_gauss - a4_gauss), std::string("gaussian")});
  }
  return table;
}

ExperimentTable report_table(const MomentReport& report) {
  ExperimentTable table({{"k", "order"},
                         {"M_k", "1"},
                         {"m_k", "1"},
                         {"a_k", "1"},
                         {"sigma_k_over_sigma", "1"}});
  for (const auto& [k, mk_central] : report.central_moments) {
    table.add_row({static_cast<double>(k), mk_central, report.normalized_m(k),
                   report.amplification_a(k), report.amplification_a(k)});
  }
  return table;
}

}  // namespace numlab::rou
