// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "numlab/rng.hpp"
#include "numlab/table.hpp"

namespace numlab::spurious {

/// Compressibility-counting model: strings of n bits, of which a complexity
/// measure can save at most kappa*n bits.
struct CompressibilityModel {
  double kappa = 0.13;
  long string_length_n = 1024;

  void validate() const;  // kappa in (0,1), n >= 1
};

struct BitString {
  std::vector<std::uint8_t> bits;  // each 0 or 1

  std::size_t length() const { return bits.size(); }
  std::string to_string() const;
  /// Packs into bytes, MSB first; a partial final byte is zero padded.
  std::vector<unsigned char> pack() const;

  static BitString parse(std::string_view text);  // '0'/'1' characters only
  /// Footnote recipe: one uniform draw per bit, 0 if u <= 1/2 else 1.
  static BitString random(std::size_t length, rng::Stream& stream);
};

struct RatioResult {
  double ratio;       // 2^(-kappa n); underflows to 0 for large n
  double log2_ratio;  // -kappa n, exact in log space
};

/// True-to-spurious correlation ratio 2^(-kappa n).
RatioResult tc_fc_ratio(const CompressibilityModel& model);

struct CountResult {
  std::optional<std::uint64_t> exact;  // floor(2^((1-kappa) n)) when (1-kappa)n <= 62
  double log2_count;                   // (1-kappa) n
};

/// Number of strings compressible by kappa*n bits: 2^((1-kappa)n) of 2^n.
CountResult count_compressible(const CompressibilityModel& model);

/// All substrings of length >= min_len occurring at least twice (overlapping
/// occurrences counted), sorted by length descending, then count descending,
/// then lexicographically.
std::vector<std::pair<std::string, int>> repeated_substrings(const BitString& s, int min_len);

/// Deflate-compressed size of a byte buffer in bits (level 9); the
/// complexity proxy. Throws ConfigurationError if the compressor fails.
std::size_t compressed_size_bits(const std::vector<unsigned char>& bytes);

struct EmpiricalResult {
  long n_bits = 0;
  double kappa = 0.0;
  long trials = 0;
  double theoretical_ratio_log2 = 0.0;
  double observed_fraction = 0.0;       // trials achieving >= kappa*n bits of savings
  std::size_t overhead_bits = 0;        // compressor framing, measured on the all-zero string
  std::vector<double> savings_bits;     // per trial, after overhead correction
  double control_savings_bits = 0.0;    // all-zero string, after overhead correction
};

/// Compresses `trials` uniform random n-bit strings and reports the fraction
/// achieving kappa*n bits of savings next to the counting bound 2^(-kappa n).
/// Requires n >= 64 and trials >= 100.
EmpiricalResult empirical_compressibility(long n, long trials, double kappa,
                                          std::uint64_t seed);

/// One-row CSV view: (n, kappa, theoretical_ratio_log2, observed_fraction,
/// trials, compressor_overhead_bits).
ExperimentTable empirical_table(const EmpiricalResult& result);

}  // namespace numlab::spurious
