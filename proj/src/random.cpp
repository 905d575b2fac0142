// Copyright 2026 The unli Authors.
// SPDX-License-Identifier: Apache-2.0

#include "unli/random.hpp"

#include <boost/math/distributions/normal.hpp>

namespace unli {

namespace {
__extension__ using Uint128 = unsigned __int128;
using NoPromotion = boost::math::policies::policy<boost::math::policies::promote_double<false>>;
const boost::math::normal_distribution<double, NoPromotion> kStandardNormal;
}  // namespace

std::uint64_t CounterStream::below(std::uint64_t counter, std::uint64_t n) const noexcept {
  // Multiply-shift; relative bias is at most n / 2^64.
  return static_cast<std::uint64_t>((static_cast<Uint128>(bits(counter)) * n) >> 64);
}

double CounterStream::normal(std::uint64_t counter) const noexcept {
  return boost::math::quantile(kStandardNormal, uniform(counter));
}

}  // namespace unli
