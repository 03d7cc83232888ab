// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace numlab::rng {

/// One splitmix64 step; also the finalizer used for seed derivation.
std::uint64_t splitmix64(std::uint64_t& state);

/// Derives an independent stream seed from (master, module-name, stream-index).
/// Adding new module names or indices never perturbs existing streams.
std::uint64_t derive_stream_seed(std::uint64_t master, std::string_view module,
                                 std::uint64_t stream_index);

/// Deterministic random stream. The engine is std::mt19937_64 (bit-exact by
/// the standard); every distribution transform is implemented here so that
/// draws are identical across platforms and library versions.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}
  Stream(std::uint64_t master, std::string_view module, std::uint64_t stream_index)
      : engine_(derive_stream_seed(master, module, stream_index)) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_open0() { return 1.0 - uniform01(); }

  /// Uniform on (-1, 1).
  double uniform_symmetric() { return 2.0 * uniform01() - 1.0; }

  /// Standard normal via Box-Muller; consumes two uniforms per pair.
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace numlab::rng
