// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "numlab/rng.hpp"
#include "numlab/table.hpp"

namespace numlab::rou {

/// Central moments M_k, normalized moments m_k = M_k / M_2^(k/2) and
/// amplification coefficients a_k = m_k^(1/k) for even orders up to
/// max_order. The order-k standard deviation is sigma_k = a_k * sigma.
struct MomentReport {
  double mean = 0.0;
  std::map<int, double> central_moments;   // even k in [2, max_order]
  std::map<int, double> normalized;        // m_k
  std::map<int, double> amplification;     // a_k
  int max_order = 0;

  double central(int k) const;
  double normalized_m(int k) const;
  double amplification_a(int k) const;  // throws std::invalid_argument if absent
};

/// Sample moment report with 1/n normalization. Requires at least two
/// samples and positive variance (DegenerateDistributionError otherwise);
/// max_order must be even and >= 4.
MomentReport moment_report(std::span<const double> samples, int max_order);

/// Gaussian normalized moment m_k = (k-1)!! for even k.
double gaussian_normalized_moment(int k);

/// Analytic Gaussian amplification coefficients a_k = ((k-1)!!)^(1/k) for
/// even k in [2, max_order].
std::map<int, double> gaussian_amplification(int max_order);

/// Cauchy density (1/pi)/(1+x^2) restricted to |x| < L; `normalized` divides
/// by the truncated mass (2/pi)*atan(L).
struct TruncatedCauchySpec {
  double bound_L = 100.0;
  bool normalized = true;
};

/// Mass of the truncated density before renormalization: (2/pi)*atan(L).
double truncated_cauchy_mass(double bound_L);

/// Closed-form moment integral (2/pi) * I(0, L, x^k/(1+x^2)) of the
/// unnormalized truncated density, for even k.
double truncated_cauchy_raw_moment(double bound_L, int k);

/// Exact truncated-Cauchy moment report via the closed-form antiderivatives;
/// requires bound_L >= 1.
MomentReport truncated_cauchy_moments(const TruncatedCauchySpec& spec, int max_order);

/// Inverse-CDF draw x = tan(u * atan(L)), u uniform on (-1, 1).
double truncated_cauchy_sample(rng::Stream& stream, double bound_L);

/// Multiplicative sample-size factor (a_k(target)/a_k(baseline))^2 required
/// to match the baseline's accuracy at order k under the 1/sqrt(n) model.
double sample_inflation(const MomentReport& target, const MomentReport& baseline,
                        int order_k);

/// For each n: draws n truncated-Cauchy samples plus a Gaussian control and
/// reports the a_4 estimation error against the closed-form values.
/// Columns: (n, a4_estimate, a4_exact, abs_error, distribution).
ExperimentTable empirical_rou_convergence(const TruncatedCauchySpec& spec,
                                          std::span<const std::size_t> sample_sizes,
                                          std::uint64_t seed);

/// Report rows (k, M_k, m_k, a_k, sigma_k_over_sigma).
ExperimentTable report_table(const MomentReport& report);

}  // namespace numlab::rou
