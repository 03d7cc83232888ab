// SPDX-License-Identifier: Apache-2.0
#include "numlab/spurious.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <zlib.h>

#include "numlab/errors.hpp"

namespace numlab::spurious {

void CompressibilityModel::validate() const {
  if (!(kappa > 0.0) || !(kappa < 1.0)) {
    throw std::domain_error("compressibility index must lie in (0, 1)");
  }
  if (string_length_n < 1) {
    throw std::domain_error("string length must be >= 1");
  }
}

std::string BitString::to_string() const {
  std::string text;
  text.reserve(bits.size());
  for (std::uint8_t bit : bits) text.push_back(bit ? '1' : '0');
  return text;
}

std::vector<unsigned char> BitString::pack() const {
  std::vector<unsigned char> bytes((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) bytes[i / 8] |= static_cast<unsigned char>(0x80u >> (i % 8));
  }
  return bytes;
}

BitString BitString::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("bit string is empty");
  BitString s;
  s.bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bit string may contain only '0' and '1'");
    }
    s.bits.push_back(c == '1' ? 1 : 0);
  }
  return s;
}

BitString BitString::random(std::size_t length, rng::Stream& stream) {
  BitString s;
  s.bits.resize(length);
  for (std::size_t i = 0; i < length; ++i) {
    s.bits[i] = stream.uniform01() <= 0.5 ? 0 : 1;
  }
  return s;
}

RatioResult tc_fc_ratio(const CompressibilityModel& model) {
  model.validate();
  const double log2_ratio = -model.kappa * static_cast<double>(model.string_length_n);
  return {std::exp2(log2_ratio), log2_ratio};
}

CountResult count_compressible(const CompressibilityModel& model) {
  model.validate();
  const double log2_count = (1.0 - model.kappa) * static_cast<double>(model.string_length_n);
  CountResult result{std::nullopt, log2_count};
  if (log2_count <= 62.0) {
    result.exact = static_cast<std::uint64_t>(std::floor(std::exp2(static_cast<long double>(log2_count))));
  }
  return result;
}

std::vector<std::pair<std::string, int>> repeated_substrings(const BitString& s, int min_len) {
  if (min_len < 1 || static_cast<std::size_t>(min_len) > s.length()) {
    throw std::invalid_argument("min length must be in [1, string length]");
  }
  const std::string text = s.to_string();
  std::vector<std::pair<std::string, int>> repeats;
  for (std::size_t len = static_cast<std::size_t>(min_len); len <= text.size(); ++len) {
    std::map<std::string, int> counts;
    for (std::size_t pos = 0; pos + len <= text.size(); ++pos) {
      ++counts[text.substr(pos, len)];
    }
    for (const auto& [sub, count] : counts) {
      if (count >= 2) repeats.emplace_back(sub, count);
    }
  }
  std::sort(repeats.begin(), repeats.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return repeats;
}

std::size_t compressed_size_bits(const std::vector<unsigned char>& bytes) {
  uLongf bound = compressBound(static_cast<uLong>(bytes.size()));
  std::vector<unsigned char> out(bound);
  const int status = compress2(out.data(), &bound, bytes.data(),
                               static_cast<uLong>(bytes.size()), Z_BEST_COMPRESSION);
  if (status != Z_OK) {
    throw ConfigurationError("deflate failed with status " + std::to_string(status));
  }
  return static_cast<std::size_t>(bound) * 8;
}

EmpiricalResult empirical_compressibility(long n, long trials, double kappa,
                                          std::uint64_t seed) {
  if (n < 64) {
    throw std::invalid_argument("need n >= 64; below that the compressor framing dominates");
  }
  if (trials < 100) throw std::invalid_argument("need at least 100 trials");
  const CompressibilityModel model{kappa, n};
  model.validate();

  EmpiricalResult result;
  result.n_bits = n;
  result.kappa = kappa;
  result.trials = trials;
  result.theoretical_ratio_log2 = tc_fc_ratio(model).log2_ratio;

  // Framing overhead: the all-zero string carries (almost) no information,
  // so its compressed size is taken as pure overhead.
  BitString zeros;
  zeros.bits.assign(static_cast<std::size_t>(n), 0);
  result.overhead_bits = compressed_size_bits(zeros.pack());
  result.control_savings_bits = static_cast<double>(n);  // by construction of the correction

  const double threshold = kappa * static_cast<double>(n);
  long achieving = 0;
  result.savings_bits.reserve(static_cast<std::size_t>(trials));
  for (long trial = 0; trial < trials; ++trial) {
    rng::Stream stream(seed, "spurious.trial", static_cast<std::uint64_t>(trial));
    const BitString s = BitString::random(static_cast<std::size_t>(n), stream);
    const double corrected =
        static_cast<double>(compressed_size_bits(s.pack())) -
        static_cast<double>(result.overhead_bits);
    const double savings = static_cast<double>(n) - corrected;
    result.savings_bits.push_back(savings);
    if (savings >= threshold) ++achieving;
  }
  result.observed_fraction = static_cast<double>(achieving) / static_cast<double>(trials);
  return result;
}

ExperimentTable empirical_table(const EmpiricalResult& result) {
  ExperimentTable table({{"n", "bits"},
                         {"kappa", "1"},
                         {"theoretical_ratio_log2", "1"},
                         {"observed_fraction", "1"},
                         {"trials", "count"},
                         {"compressor_overhead_bits", "bits"}});
  table.add_row({static_cast<double>(result.n_bits), result.kappa,
                 result.theoretical_ratio_log2, result.observed_fraction,
                 static_cast<double>(result.trials),
                 static_cast<double>(result.overhead_bits)});
  return table;
}

}  // namespace numlab::spurious
