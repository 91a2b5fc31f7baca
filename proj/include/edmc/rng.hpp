// Copyright (c) 2026 the edmc authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace edmc::rng {

// Identifier of the sampling scheme, recorded in run reports so that results
// can be tied to the exact generator that produced them.
inline constexpr const char* kGeneratorName = "mt19937_64/u53/polar-normal";

/// Seedable random stream with samplers whose algorithms are pinned here
/// rather than left to the standard library, so the same seed yields the
/// same sequence on every platform.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1), 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Unbiased uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Standard normal via the Marsaglia polar method.
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Mixes a base seed with a path of indices (e.g. {cell, repetition, role})
/// into an independent sub-stream seed. Pure and order-sensitive.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path);

}  // namespace edmc::rng
