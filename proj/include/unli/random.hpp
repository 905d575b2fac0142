// Copyright 2026 The unli Authors.
// SPDX-License-Identifier: Apache-2.0

// Counter-based random numbers. Every variate is a pure function of
// (key, counter), so any subsequence can be generated independently and
// parallel evaluation reproduces serial output bit for bit.
//
// The construction is SplitMix64 addressed by position:
//   bits(key, k)            = mix64(key + (k + 1) * 0x9e3779b97f4a7c15)
//   derive_seed(master, i)  = bits(mix64(master), i)
// Uniforms keep the top 53 bits and are centred in their cell, so they lie
// strictly inside (0, 1). Normals are the inverse CDF of those uniforms.

#pragma once

#include <cstdint>

namespace unli {

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of the index-th independent substream of `master`.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(mix64(master) + (index + 1) * kGoldenGamma);
}

class CounterStream {
 public:
  explicit constexpr CounterStream(std::uint64_t key) noexcept : key_(key) {}

  constexpr std::uint64_t bits(std::uint64_t counter) const noexcept {
    return mix64(key_ + (counter + 1) * kGoldenGamma);
  }

  /// Uniform on the open interval (0, 1).
  constexpr double uniform(std::uint64_t counter) const noexcept {
    return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n), n > 0.
  std::uint64_t below(std::uint64_t counter, std::uint64_t n) const noexcept;

  /// Standard normal by inversion.
  double normal(std::uint64_t counter) const noexcept;

  constexpr std::uint64_t key() const noexcept { return key_; }

 private:
  std::uint64_t key_;
};

}  // namespace unli
