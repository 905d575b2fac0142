// Copyright 2026 The unli Authors.
// SPDX-License-Identifier: Apache-2.0

// Expected value of perfect information for two- and three-strategy
// decisions under normally distributed incremental net benefits.

#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "unli/format.hpp"
#include "unli/loss_integral.hpp"

namespace unli {

/// EVPI of a new strategy against a reference when INB ~ N(mu, sigma^2):
/// E[max(INB, 0)] - max(mu, 0).
double evpi_two(double mu_inb, double sigma_inb);

/// EVPI of three strategies given the INBs of two of them against the third:
/// E[max(Y1, Y2, 0)] - max(mu1, mu2, 0).
double evpi_three(const BvnParams& p);

enum class EvpiMethod { closed_form, bootstrap };

/// "closed" or "bootstrap".
std::string_view to_string(EvpiMethod method) noexcept;

struct EvpiPoint {
  double wtp;
  double evpi;
};

/// EVPI over willingness-to-pay values, strictly increasing in wtp.
struct EvpiCurve {
  std::vector<EvpiPoint> points;
  EvpiMethod method;
};

/// Grid min, min + step, ... up to max inclusive (within a relative 1e-9 of
/// step). A step wider than the range yields the single point {min}.
std::vector<double> wtp_grid(double min, double max, double step);

using BvnAtWtp = std::function<BvnParams(double wtp)>;

EvpiCurve evpi_curve_closed(const BvnAtWtp& params_at_wtp, std::span<const double> wtps);

/// Mean over points of |other - reference| / reference, restricted to points
/// where reference exceeds `min_reference`. Curves must share their wtp
/// values. Returns NaN when no point qualifies.
double mean_relative_absolute_error(const EvpiCurve& reference, const EvpiCurve& other,
                                    double min_reference);

/// CSV with header wtp,evpi,method.
void write_curve_csv(std::ostream& out, const EvpiCurve& curve,
                     NumberFormat format = NumberFormat::significant10);

namespace detail {
void require_increasing(std::span<const double> wtps);
}

}  // namespace unli
