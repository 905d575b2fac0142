// Copyright 2026 The unli Authors.
// SPDX-License-Identifier: Apache-2.0

#include "unli/loss_integral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace unli {

using detail::cdf;
using detail::phi;

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw std::domain_error(std::string(name) + " must be finite");
}

double sign(double x) noexcept { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// Shared geometry of the (i, j) term.
struct Pair {
  double mu_i, mu_j, sigma_i, sigma_j, rho;
  double root;  // sqrt(1 - rho^2)
  double d;     // sigma_i - rho * sigma_j
  bool degenerate;

  Pair(const BvnParams& p, Index i, Index j)
      : mu_i(p.mu(i)),
        mu_j(p.mu(j)),
        sigma_i(p.sigma(i)),
        sigma_j(p.sigma(j)),
        rho(p.rho()),
        root(std::sqrt((1.0 - rho) * (1.0 + rho))),
        d(std::fma(-rho, sigma_j, sigma_i)),
        degenerate(std::abs(d) <= kDegenerateTolerance * std::max(sigma_i, sigma_j)) {
    if (i == j) throw std::invalid_argument("term indices must differ");
  }

  // Standardized threshold at which Y_j overtakes Y_i when Y_i = 0; the
  // argument of Phi in the boundary term.
  double threshold() const noexcept {
    return (rho * sigma_j * mu_i - sigma_i * mu_j) / (sigma_i * sigma_j * root);
  }
};

}  // namespace

BvnParams::BvnParams(double mu1, double mu2, double sigma1, double sigma2, double rho)
    : mu1_(mu1), mu2_(mu2), sigma1_(sigma1), sigma2_(sigma2), rho_(rho) {
  require_finite(mu1, "mu1");
  require_finite(mu2, "mu2");
  require_finite(sigma1, "sigma1");
  require_finite(sigma2, "sigma2");
  if (!(sigma1 > 0.0) || !(sigma2 > 0.0)) {
    throw std::domain_error("standard deviations must be positive");
  }
  if (std::abs(rho) > kMaxAbsRho) {
    throw std::domain_error("|rho| too close to 1: " + std::to_string(rho));
  }
}

double BvnParams::scale() const noexcept {
  return std::max({std::abs(mu1_), std::abs(mu2_), sigma1_, sigma2_});
}

double unli_1d(double mu, double sigma) {
  require_finite(mu, "mu");
  require_finite(sigma, "sigma");
  if (!(sigma > 0.0)) throw std::domain_error("sigma must be positive");
  const double z = mu / sigma;
  return mu * cdf(z) + sigma * phi(z);
}

TermIntermediates term_intermediates(const BvnParams& p, Index i, Index j) {
  const Pair t(p, i, j);
  if (t.degenerate) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan, nan, nan, nan, nan, nan, nan, true};
  }
  TermIntermediates m{};
  m.alpha = (t.sigma_i * t.mu_j - t.rho * t.sigma_j * t.mu_i) / t.d;
  m.beta = t.sigma_i * t.sigma_j * t.root / t.d;
  const double abs_beta = std::abs(m.beta);
  m.a1 = (t.mu_i - m.alpha) / abs_beta;
  m.b1 = t.sigma_i / abs_beta;
  m.a2 = (m.alpha - t.mu_i) / t.sigma_i;
  m.b2 = abs_beta / t.sigma_i;
  m.t1 = std::sqrt(1.0 + m.b1 * m.b1);
  m.t2 = std::sqrt(1.0 + m.b2 * m.b2);
  m.degenerate = false;
  return m;
}

double u_term(const BvnParams& p, Index i, Index j) {
  const Pair t(p, i, j);
  const double c = cdf(t.threshold());
  const double bracket = t.degenerate ? c : (t.d > 0.0 ? 1.0 : 0.0);
  const double z = -t.mu_i / t.sigma_i;
  return t.mu_i * bracket - c * (t.mu_i * cdf(z) - t.sigma_i * phi(z));
}

// Same quantity as v_term_literal, rewritten so nothing divides by
// d = sigma_i - rho * sigma_j. With sd^2 = Var(Y_i - Y_j) = d^2 + sigma_j^2 (1 - rho^2):
//   -a1/t1 = a2/t2 = -sgn(d) (mu_i - mu_j) / sd
//   -1/t1          = -sigma_j sqrt(1 - rho^2) / sd
//   sigma_i/t2     = sigma_i |d| / sd
//   -alpha/|beta|  = sgn(d) * threshold
double v_term(const BvnParams& p, Index i, Index j) {
  const Pair t(p, i, j);
  if (t.degenerate) return 0.0;
  const double s = sign(t.d);
  const double sd = std::hypot(t.d, t.sigma_j * t.root);
  const double c = t.threshold();
  const double h = -s * (t.mu_i - t.mu_j) / sd;
  const double r = std::clamp(-t.sigma_j * t.root / sd, -1.0, 1.0);

  // Phi(h) - Phi2(h, s c, r) = P(X <= h, W > s c) with corr(X, W) = r.
  const double tail = detail::bvn_upper(-h, s * c, -r, std::abs(t.d) / sd);
  const double upper = (t.mu_i * t.sigma_j * t.root / t.sigma_i - c * t.d) / sd;
  return -s * t.mu_i * tail + (t.sigma_i * t.d / sd) * phi(h) * cdf(upper);
}

// With X = -Z_i and W the standardized Y_i - Y_j, corr(Z_i, W) = d / sd and
//   E[Z 1{Z > a, W > b}] = phi(a) Phi((k a - b) / q) + k phi(b) Phi((k b - a) / q).
double pair_term(const BvnParams& p, Index i, Index j) {
  const Pair t(p, i, j);
  const double q_num = t.sigma_j * t.root;
  const double sd = std::hypot(t.d, q_num);
  const double k = t.d / sd;
  const double q = q_num / sd;
  const double a = -t.mu_i / t.sigma_i;
  const double b = -(t.mu_i - t.mu_j) / sd;
  const double prob = detail::bvn_upper(a, b, k, q);
  const double moment = phi(a) * cdf((k * a - b) / q) + k * phi(b) * cdf((k * b - a) / q);
  return t.mu_i * prob + t.sigma_i * moment;
}

Unli2dBreakdown unli_2d(const BvnParams& p) {
  Unli2dBreakdown b{};
  b.u12 = u_term(p, Index::one, Index::two);
  b.v12 = v_term(p, Index::one, Index::two);
  b.u21 = u_term(p, Index::two, Index::one);
  b.v21 = v_term(p, Index::two, Index::one);
  // Same value as the sum of the four terms, without their cancellation.
  b.total = pair_term(p, Index::one, Index::two) + pair_term(p, Index::two, Index::one);
  return b;
}

namespace detail {

double v_term_literal(const BvnParams& p, Index i, Index j, BetaLimit convention) {
  const TermIntermediates m = term_intermediates(p, i, j);
  if (m.degenerate) return 0.0;
  const double mu = p.mu(i);
  const double sigma = p.sigma(i);
  const double s = sign(m.beta);
  const double scale = convention == BetaLimit::absolute ? std::abs(m.beta) : m.beta;

  const double lead = cdf((-m.a1 / m.b1) / std::sqrt(1.0 + 1.0 / (m.b1 * m.b1)));
  // Phi2(x1, x2, r) = P(Z1 > -x1, Z2 > -x2) with the same r.
  const double phi2 = bvn_upper(m.a1 / m.t1, m.alpha / scale, -1.0 / m.t1);
  const double trailing = 1.0 - cdf(-m.t2 * m.alpha / scale + m.a2 * m.b2 / m.t2);

  const double integral = mu * s * (lead - phi2) -
                          s * (sigma / m.t2) * phi(m.a2 / m.t2) * trailing;
  return -integral;
}

}  // namespace detail
}  // namespace unli
