// Copyright 2026 The unli Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace unli {

/// A value in [0, 1]. Construction validates; reads convert implicitly.
class Probability {
 public:
  explicit Probability(double value);
  constexpr operator double() const noexcept { return value_; }
  constexpr double value() const noexcept { return value_; }

 private:
  double value_;
};

/// Correlation coefficient strictly inside (-1, 1).
class Correlation {
 public:
  explicit Correlation(double value);
  constexpr operator double() const noexcept { return value_; }
  constexpr double value() const noexcept { return value_; }

 private:
  double value_;
};

/// Standard normal density. Throws std::domain_error on non-finite input.
double std_normal_pdf(double x);

/// Standard normal CDF, evaluated through erfc so the lower tail keeps full
/// relative precision. Accepts +-infinity; throws on NaN.
Probability std_normal_cdf(double x);

/// P(Z1 <= x1, Z2 <= x2) for a standard bivariate normal with correlation rho.
/// Infinite limits are handled analytically.
Probability bvn_cdf(double x1, double x2, Correlation rho);

namespace detail {

// Unchecked kernels used on hot paths where arguments are already validated.
double phi(double x) noexcept;
double cdf(double x) noexcept;

// P(Z1 > h, Z2 > k) with corr(Z1, Z2) = r, r in [-1, 1] inclusive. The
// endpoints are the degenerate (perfectly dependent) limits.
double bvn_upper(double h, double k, double r) noexcept;

// Same, with sqrt(1 - r^2) supplied by a caller that knows it more
// accurately than it can be recovered from r.
double bvn_upper(double h, double k, double r, double root) noexcept;

}  // namespace detail
}  // namespace unli
