// Copyright 2026 The unli Authors.
// SPDX-License-Identifier: Apache-2.0

#include "unli/normal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace unli {

Probability::Probability(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::domain_error("probability outside [0, 1]: " + std::to_string(value));
  }
}

Correlation::Correlation(double value) : value_(value) {
  if (!(value > -1.0 && value < 1.0)) {
    throw std::domain_error("correlation must lie strictly inside (-1, 1), got " +
                            std::to_string(value));
  }
}

namespace detail {

double phi(double x) noexcept {
  return std::exp(-0.5 * x * x) * (0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2);
}

double cdf(double x) noexcept { return 0.5 * std::erfc(-x * (0.5 * std::numbers::sqrt2)); }

namespace {

// Gauss-Legendre abscissae (positive half) and weights on [-1, 1] for 6, 12
// and 20 points.
constexpr std::array<double, 3> kX6 = {0.9324695142031522, 0.6612093864662647,
                                       0.2386191860831970};
constexpr std::array<double, 3> kW6 = {0.1713244923791705, 0.3607615730481384,
                                       0.4679139345726904};
constexpr std::array<double, 6> kX12 = {0.9815606342467191, 0.9041172563704750,
                                        0.7699026741943050, 0.5873179542866171,
                                        0.3678314989981802, 0.1252334085114692};
constexpr std::array<double, 6> kW12 = {0.04717533638651177, 0.1069393259953183,
                                        0.1600783285433464,  0.2031674267230659,
                                        0.2334925365383547,  0.2491470458134029};
constexpr std::array<double, 10> kX20 = {
    0.9931285991850949, 0.9639719272779138, 0.9122344282513259, 0.8391169718222188,
    0.7463319064601508, 0.6360536807265150, 0.5108670019508271, 0.3737060887154196,
    0.2277858511416451, 0.07652652113349733};
constexpr std::array<double, 10> kW20 = {
    0.01761400713915212, 0.04060142980038694, 0.06267204833410906, 0.08327674157670475,
    0.1019301198172404,  0.1181945319615184,  0.1316886384491766,  0.1420961093183821,
    0.1491729864726037,  0.1527533871307259};

struct Rule {
  const double* x;
  const double* w;
  std::size_t n;
};

Rule rule_for(double abs_r) noexcept {
  if (abs_r < 0.3) return {kX6.data(), kW6.data(), kX6.size()};
  if (abs_r < 0.75) return {kX12.data(), kW12.data(), kX12.size()};
  return {kX20.data(), kW20.data(), kX20.size()};
}

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

// Drezner-Wesolowsky single-integral form with Genz's refinements: fixed
// Gauss-Legendre over the correlation for moderate |r|, and the
// asymptotic-series expansion around |r| = 1 otherwise.
double bvn_upper(double h, double k, double r) noexcept {
  return bvn_upper(h, k, r, std::sqrt((1.0 - r) * (1.0 + r)));
}

double bvn_upper(double h, double k, double r, double root) noexcept {
  if (h == INFINITY || k == INFINITY) return 0.0;
  if (h == -INFINITY) return k == -INFINITY ? 1.0 : cdf(-k);
  if (k == -INFINITY) return cdf(-h);
  if (r == 0.0) return cdf(-h) * cdf(-k);

  const Rule rule = rule_for(std::abs(r));
  double hk = h * k;
  double bvn = 0.0;

  if (std::abs(r) < 0.925) {
    const double hs = 0.5 * (h * h + k * k);
    const double asr = std::asin(r);
    for (std::size_t i = 0; i < rule.n; ++i) {
      for (double sign : {-1.0, 1.0}) {
        const double sn = std::sin(0.5 * asr * (1.0 + sign * rule.x[i]));
        bvn += rule.w[i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
      }
    }
    return std::clamp(bvn * asr / (2.0 * kTwoPi) + cdf(-h) * cdf(-k), 0.0, 1.0);
  }

  if (r < 0.0) {
    k = -k;
    hk = -hk;
  }
  if (root > 0.0) {
    double a = root;
    const double as = a * a;
    const double bs = (h - k) * (h - k);
    const double c = (4.0 - hk) / 8.0;
    const double d = (12.0 - hk) / 16.0;
    bvn = a * std::exp(-0.5 * (bs / as + hk)) *
          (1.0 - c * (bs - as) * (1.0 - d * bs / 5.0) / 3.0 + c * d * as * as / 5.0);
    if (hk > -160.0) {
      const double b = std::sqrt(bs);
      bvn -= std::exp(-0.5 * hk) * std::sqrt(kTwoPi) * cdf(-b / a) * b *
             (1.0 - c * bs * (1.0 - d * bs / 5.0) / 3.0);
    }
    a *= 0.5;
    for (std::size_t i = 0; i < rule.n; ++i) {
      for (double sign : {-1.0, 1.0}) {
        const double xs = std::pow(a * (1.0 + sign * rule.x[i]), 2);
        const double rs = std::sqrt(1.0 - xs);
        const double e1 = std::exp(-bs / (2.0 * xs) - hk / (1.0 + rs)) / rs;
        const double e2 = std::exp(-0.5 * (bs / xs + hk)) * (1.0 + c * xs * (1.0 + d * xs));
        bvn += a * rule.w[i] * (e1 - e2);
      }
    }
    bvn = -bvn / kTwoPi;
  }

  if (r > 0.0) {
    bvn += cdf(-std::max(h, k));
  } else {
    bvn = -bvn;
    if (k > h) bvn += h < 0.0 ? cdf(k) - cdf(h) : cdf(-h) - cdf(-k);
  }
  return std::clamp(bvn, 0.0, 1.0);
}

}  // namespace detail

double std_normal_pdf(double x) {
  if (!std::isfinite(x)) throw std::domain_error("std_normal_pdf: non-finite argument");
  return detail::phi(x);
}

Probability std_normal_cdf(double x) {
  if (std::isnan(x)) throw std::domain_error("std_normal_cdf: NaN argument");
  return Probability(detail::cdf(x));
}

Probability bvn_cdf(double x1, double x2, Correlation rho) {
  if (std::isnan(x1) || std::isnan(x2)) throw std::domain_error("bvn_cdf: NaN argument");
  // Canonical argument order makes the (x1, x2) swap symmetry exact.
  if (x2 < x1) std::swap(x1, x2);
  return Probability(detail::bvn_upper(-x1, -x2, rho));
}

}  // namespace unli
