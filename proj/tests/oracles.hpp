// Copyright 2026 The unli Authors.
// SPDX-License-Identifier: Apache-2.0

// Independent reference computations for tests. Everything here works in
// long double with adaptive Gauss-Kronrod quadrature and shares no code with
// the library's closed forms.

#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace oracle {

using real = long double;

inline real phi(real x) {
  return std::exp(-x * x / 2) / std::sqrt(2 * std::numbers::pi_v<real>);
}
inline real cdf(real x) { return std::erfc(-x / std::numbers::sqrt2_v<real>) / 2; }

template <class F>
real integrate(F f, real a, real b, unsigned depth = 20, real tol = 1e-17L) {
  if (!(b > a)) return 0;
  return boost::math::quadrature::gauss_kronrod<real, 31>::integrate(f, a, b, depth, tol);
}

/// int_0^inf (y / sigma) phi((y - mu) / sigma) dy.
inline double unli_1d(double mu, double sigma) {
  const real m = mu, s = sigma;
  auto f = [&](real y) { return y / s * phi((y - m) / s); };
  const real lo = std::max<real>(0, m - 40 * s);
  const real hi = std::max<real>(0, m + 40 * s);
  // Split at the mode so the adaptive rule sees the peak.
  const real mid = std::clamp<real>(m, lo, hi);
  return static_cast<double>(integrate(f, lo, mid) + integrate(f, mid, hi));
}

/// P(Z1 <= x1, Z2 <= x2) by conditioning on Z1:
/// int_{-inf}^{x1} phi(z) Phi((x2 - rho z) / sqrt(1 - rho^2)) dz.
inline double bvn_cdf(double x1, double x2, double rho) {
  const real r = rho, root = std::sqrt(1 - r * r), k = x2;
  auto f = [&](real z) { return phi(z) * cdf((k - r * z) / root); };
  const real hi = std::min<real>(x1, 40);
  // Breakpoint where the conditional probability crosses one half.
  real knee = r != 0 ? k / r : hi;
  knee = std::clamp<real>(knee, -40, hi);
  return static_cast<double>(integrate(f, -40, knee) + integrate(f, knee, hi));
}

/// Same probability as a genuine two-dimensional integral of the density.
inline double bvn_cdf_nested(double x1, double x2, double rho) {
  const real r = rho, root = std::sqrt(1 - r * r);
  auto density = [&](real a, real b) {
    return std::exp(-(a * a - 2 * r * a * b + b * b) / (2 * root * root)) /
           (2 * std::numbers::pi_v<real> * root);
  };
  auto outer = [&](real a) {
    auto inner = [&](real b) { return density(a, b); };
    const real c = std::clamp<real>(r * a, -40, std::min<real>(x2, 40));
    return integrate(inner, -40, c, 12, 1e-15L) + integrate(inner, c, std::min<real>(x2, 40), 12, 1e-15L);
  };
  return static_cast<double>(integrate(outer, -40, std::min<real>(x1, 40), 12, 1e-15L));
}

/// E[max(Y1, Y2, 0)] for bivariate normal. Conditions on Z1 so that
/// Y2 | Z1 ~ N(m, s^2) and E[max(a, Y2)] = a + (m - a) Phi((m - a)/s) + s phi((m - a)/s).
inline double expected_max(double mu1, double mu2, double sigma1, double sigma2, double rho) {
  const real m1 = mu1, m2 = mu2, s1 = sigma1, s2 = sigma2, r = rho;
  const real s = s2 * std::sqrt(1 - r * r);
  auto f = [&](real z) {
    const real a = std::max<real>(m1 + s1 * z, 0);
    const real m = m2 + s2 * r * z;
    const real d = (m - a) / s;
    return phi(z) * (a + (m - a) * cdf(d) + s * phi(d));
  };
  const real kink = std::clamp<real>(-m1 / s1, -40, 40);
  return static_cast<double>(integrate(f, -40, kink) + integrate(f, kink, 40));
}

}  // namespace oracle
