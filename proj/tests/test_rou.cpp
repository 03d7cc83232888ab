// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "numlab/errors.hpp"
#include "numlab/rng.hpp"
#include "numlab/rou.hpp"

using namespace numlab;
using namespace numlab::rou;

namespace {

// Independent oracle: adaptive Gauss-Kronrod quadrature of the truncated
// Cauchy moment integrals.
double quadrature_raw_moment(double bound, int k) {
  auto integrand = [k](double x) {
    return std::pow(x, k) / (std::numbers::pi * (1.0 + x * x));
  };
  return 2.0 * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                   integrand, 0.0, bound, 12, 1e-12);
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("moment report: two-point and defined identities") {
  std::vector<double> samples;
  for (int i = 0; i < 500; ++i) samples.push_back(i % 2 == 0 ? 1.0 : -1.0);
  const auto report = moment_report(samples, 8);
  CHECK(report.mean == doctest::Approx(0.0));
  CHECK(report.normalized_m(4) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.amplification_a(4) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.normalized_m(2) == 1.0);
  CHECK(report.amplification_a(2) == 1.0);
}

TEST_CASE("moment report: Gaussian closure at one million samples") {
  rng::Stream stream(314159);
  std::vector<double> samples(1000000);
  for (double& x : samples) x = stream.normal();
  const auto report = moment_report(samples, 8);
  CHECK(report.normalized_m(4) == doctest::Approx(3.0).epsilon(0.05 / 3.0));
  CHECK(report.normalized_m(6) == doctest::Approx(15.0).epsilon(0.6 / 15.0));
  CHECK(report.normalized_m(8) == doctest::Approx(105.0).epsilon(10.0 / 105.0));
}

TEST_CASE("moment report error paths") {
  CHECK_THROWS_AS(moment_report(std::vector<double>{1.0}, 4), std::invalid_argument);
  CHECK_THROWS_AS(moment_report(std::vector<double>{1.0, 2.0}, 5), std::invalid_argument);
  CHECK_THROWS_AS(moment_report(std::vector<double>{1.0, 2.0}, 2), std::invalid_argument);
  CHECK_THROWS_AS(moment_report(std::vector<double>(100, 3.25), 4),
                  DegenerateDistributionError);
}

TEST_CASE("recomputation identities hold to 1e-12") {
  rng::Stream stream(55);
  std::vector<double> samples(5000);
  for (double& x : samples) x = stream.normal() + 0.3;
  const auto report = moment_report(samples, 10);
  for (int k = 2; k <= 10; k += 2) {
    CHECK(std::pow(report.amplification_a(k), k) ==
          doctest::Approx(report.normalized_m(k)).epsilon(1e-12));
    const double sigma = std::sqrt(report.central(2));
    const double sigma_k = report.amplification_a(k) * sigma;
    CHECK(std::pow(sigma_k, k) ==
          doctest::Approx(report.normalized_m(k) * std::pow(sigma, k)).epsilon(1e-12));
  }
}

TEST_CASE("gaussian amplification: double factorial values") {
  const auto a = gaussian_amplification(10);
  CHECK(gaussian_normalized_moment(4) == 3.0);
  CHECK(gaussian_normalized_moment(6) == 15.0);
  CHECK(gaussian_normalized_moment(8) == 105.0);
  CHECK(gaussian_normalized_moment(10) == 945.0);
  CHECK(a.at(2) == 1.0);
  CHECK(a.at(4) == doctest::Approx(std::pow(3.0, 0.25)).epsilon(1e-15));
  CHECK(a.at(4) == doctest::Approx(1.3161).epsilon(1e-4));
  CHECK(a.at(6) == doctest::Approx(1.5704).epsilon(1e-4));
  CHECK(a.at(8) == doctest::Approx(1.7892).epsilon(1e-4));
  CHECK(a.at(10) == doctest::Approx(1.9840).epsilon(1e-4));
  CHECK_THROWS_AS(gaussian_amplification(7), std::invalid_argument);
}

TEST_CASE("truncated Cauchy closed forms at L=100") {
  const TruncatedCauchySpec spec{100.0, false};
  const auto report = truncated_cauchy_moments(spec, 4);
  CHECK(report.central(2) == doctest::Approx(62.66834322228795).epsilon(1e-12));
  CHECK(report.central(4) == doctest::Approx(2.121439224459715e5).epsilon(1e-12));
  CHECK(report.normalized_m(4) == doctest::Approx(54.0).epsilon(1e-3));
  CHECK(report.amplification_a(4) == doctest::Approx(2.711).epsilon(1e-3));
}

TEST_CASE("closed-form moments agree with adaptive quadrature to 1e-9") {
  for (const double bound : {1.0, 10.0, 100.0, 1000.0}) {
    for (const int k : {2, 4, 6}) {
      const double closed = truncated_cauchy_raw_moment(bound, k);
      const double quad = quadrature_raw_moment(bound, k);
      CHECK(std::fabs(closed - quad) / std::fabs(quad) <= 1e-9);
    }
  }
}

TEST_CASE("large-L scaling: M_2 ~ L and M_4 ~ L^3") {
  std::vector<double> lx, l2, l4;
  for (double exponent = 2.0; exponent <= 5.0; exponent += 0.5) {
    const double bound = std::pow(10.0, exponent);
    lx.push_back(std::log10(bound));
    l2.push_back(std::log10(truncated_cauchy_raw_moment(bound, 2)));
    l4.push_back(std::log10(truncated_cauchy_raw_moment(bound, 4)));
  }
  CHECK(fit_slope(lx, l2) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(fit_slope(lx, l4) == doctest::Approx(3.0).epsilon(0.02 / 3.0));
  // leading constants
  const double big = 1e6;
  CHECK(truncated_cauchy_raw_moment(big, 2) / big ==
        doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-4));
  CHECK(truncated_cauchy_raw_moment(big, 4) / std::pow(big, 3) ==
        doctest::Approx(2.0 / (3.0 * std::numbers::pi)).epsilon(1e-4));
}

TEST_CASE("normalization correction stays below one percent at L=100") {
  CHECK(truncated_cauchy_mass(100.0) == doctest::Approx(0.99363).epsilon(1e-5));
  const auto raw = truncated_cauchy_moments({100.0, false}, 4);
  const auto normalized = truncated_cauchy_moments({100.0, true}, 4);
  const double shift = std::fabs(normalized.normalized_m(4) - raw.normalized_m(4)) /
                       raw.normalized_m(4);
  CHECK(shift < 0.01);
}

TEST_CASE("truncated Cauchy bound must be at least one") {
  CHECK_THROWS_AS(truncated_cauchy_moments({0.5, true}, 4), std::domain_error);
}

TEST_CASE("inverse-CDF sampling stays inside the bound and fills the tails") {
  rng::Stream stream(10);
  const double bound = 100.0;
  int beyond_ten = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double x = truncated_cauchy_sample(stream, bound);
    CHECK(std::fabs(x) <= bound);
    if (std::fabs(x) > 10.0) ++beyond_ten;
  }
  // P(|x| > 10) = (atan(100) - atan(10)) / atan(100) ~ 0.0635
  const double fraction = static_cast<double>(beyond_ten) / n;
  CHECK(fraction == doctest::Approx(0.0635).epsilon(0.1));
}

TEST_CASE("sample inflation") {
  const auto cauchy = truncated_cauchy_moments({100.0, false}, 4);
  rng::Stream stream(8);
  std::vector<double> samples(10000);
  for (double& x : samples) x = stream.normal();
  const auto gaussian = moment_report(samples, 4);

  CHECK(sample_inflation(cauchy, cauchy, 4) == doctest::Approx(1.0).epsilon(1e-12));
  // a_4 ratio 2.711 / 1.316 -> inflation about 4.24
  MomentReport exact_gauss;
  exact_gauss.max_order = 4;
  for (int k = 2; k <= 4; k += 2) {
    exact_gauss.normalized[k] = gaussian_normalized_moment(k);
    exact_gauss.amplification[k] = std::pow(gaussian_normalized_moment(k), 1.0 / k);
    exact_gauss.central_moments[k] = gaussian_normalized_moment(k);
  }
  CHECK(sample_inflation(cauchy, exact_gauss, 4) == doctest::Approx(4.2433).epsilon(1e-3));
  // a ratio of 100 means 100^2 more samples
  MomentReport wide = exact_gauss;
  wide.amplification[4] = exact_gauss.amplification[4] * 100.0;
  CHECK(sample_inflation(wide, exact_gauss, 4) == doctest::Approx(1e4).epsilon(1e-12));
  CHECK_THROWS_AS(sample_inflation(cauchy, exact_gauss, 6), std::invalid_argument);
}

TEST_CASE("empirical convergence experiment") {
  const TruncatedCauchySpec spec{100.0, true};
  const std::vector<std::size_t> sizes = {1000, 10000, 100000, 1000000};
  const auto table = empirical_rou_convergence(spec, sizes, 3);
  REQUIRE(table.rows().size() == 2 * sizes.size());

  const std::size_t err_col = table.column_index("abs_error");
  const std::size_t dist_col = table.column_index("distribution");
  std::vector<double> cauchy_errors, gauss_errors;
  for (std::size_t r = 0; r < table.rows().size(); ++r) {
    if (table.text_at(r, dist_col) == "truncated_cauchy") {
      cauchy_errors.push_back(table.number_at(r, err_col));
    } else {
      gauss_errors.push_back(table.number_at(r, err_col));
    }
  }
  REQUIRE(cauchy_errors.size() == sizes.size());

  // Gaussian control at n = 1e6 is within 0.01 of the closed form.
  CHECK(gauss_errors.back() < 0.01);
  // errors shrink end to end; the log-log fit is near the 1/sqrt(n) model
  // (single realizations per n leave it noisy, hence the wide window)
  CHECK(cauchy_errors.back() < cauchy_errors.front());
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    lx.push_back(std::log10(static_cast<double>(sizes[i])));
    ly.push_back(std::log10(cauchy_errors[i]));
  }
  const double slope = fit_slope(lx, ly);
  CHECK(slope < -0.2);
  CHECK(slope > -0.8);
  // heavy tails hurt: at the smallest n the Cauchy estimate is worse
  CHECK(cauchy_errors.front() > gauss_errors.front());

  CHECK_THROWS_AS(empirical_rou_convergence(spec, std::vector<std::size_t>{}, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      empirical_rou_convergence(spec, std::vector<std::size_t>{100, 100}, 3),
      std::invalid_argument);
}

TEST_CASE("report table carries the sigma_k identity") {
  const auto report = truncated_cauchy_moments({100.0, false}, 6);
  const auto table = report_table(report);
  REQUIRE(table.rows().size() == 3);
  const std::size_t ak_col = table.column_index("a_k");
  const std::size_t sk_col = table.column_index("sigma_k_over_sigma");
  for (std::size_t r = 0; r < table.rows().size(); ++r) {
    CHECK(table.number_at(r, ak_col) == table.number_at(r, sk_col));
  }
}
