// Copyright 2026 The unli Authors.
// SPDX-License-Identifier: Apache-2.0

#include "unli/voi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace unli {

double evpi_two(double mu_inb, double sigma_inb) {
  // E[max(Y, 0)] - max(mu, 0) is the loss integral of N(-|mu|, sigma^2).
  return unli_1d(-std::abs(mu_inb), sigma_inb);
}

double evpi_three(const BvnParams& p) {
  if (p.mu1() <= 0.0 && p.mu2() <= 0.0) return unli_2d(p).total;
  // Difference against the strategy that is best on current information, so
  // max(mu) = 0 and EVPI is E[max] itself rather than a difference of two
  // nearly equal numbers.
  const bool first = p.mu1() >= p.mu2();
  const double mu_b = first ? p.mu1() : p.mu2();
  const double mu_o = first ? p.mu2() : p.mu1();
  const double s_b = first ? p.sigma1() : p.sigma2();
  const double s_o = first ? p.sigma2() : p.sigma1();
  const double rho = p.rho();
  // Var(Y_o - Y_b) = (s_o - s_b)^2 + 2 (1 - rho) s_o s_b.
  const double s_diff = std::sqrt((s_o - s_b) * (s_o - s_b) + 2.0 * (1.0 - rho) * s_o * s_b);
  // corr(-Y_b, Y_o - Y_b) = (s_b - rho s_o) / s_diff.
  const double r = std::clamp(std::fma(-rho, s_o, s_b) / s_diff, -kMaxAbsRho, kMaxAbsRho);
  return unli_2d(BvnParams(-mu_b, mu_o - mu_b, s_b, s_diff, r)).total;
}

std::string_view to_string(EvpiMethod method) noexcept {
  return method == EvpiMethod::closed_form ? "closed" : "bootstrap";
}

std::vector<double> wtp_grid(double min, double max, double step) {
  if (!std::isfinite(min) || !std::isfinite(max) || !std::isfinite(step)) {
    throw std::domain_error("wtp grid bounds must be finite");
  }
  if (!(step > 0.0)) throw std::domain_error("wtp step must be positive");
  if (max < min) throw std::domain_error("wtp max below wtp min");
  std::vector<double> out;
  const double slack = 1e-9 * step;
  for (std::size_t k = 0;; ++k) {
    const double w = min + static_cast<double>(k) * step;
    if (w > max + slack) break;
    out.push_back(w);
  }
  return out;
}

namespace detail {
void require_increasing(std::span<const double> wtps) {
  for (std::size_t k = 0; k < wtps.size(); ++k) {
    if (!std::isfinite(wtps[k])) throw std::domain_error("wtp values must be finite");
    if (k > 0 && !(wtps[k] > wtps[k - 1])) {
      throw std::domain_error("wtp values must be strictly increasing");
    }
  }
}
}  // namespace detail

EvpiCurve evpi_curve_closed(const BvnAtWtp& params_at_wtp, std::span<const double> wtps) {
  detail::require_increasing(wtps);
  EvpiCurve curve{{}, EvpiMethod::closed_form};
  curve.points.reserve(wtps.size());
  for (double w : wtps) curve.points.push_back({w, evpi_three(params_at_wtp(w))});
  return curve;
}

double mean_relative_absolute_error(const EvpiCurve& reference, const EvpiCurve& other,
                                    double min_reference) {
  if (reference.points.size() != other.points.size()) {
    throw std::invalid_argument("curves differ in length");
  }
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < reference.points.size(); ++k) {
    const EvpiPoint& r = reference.points[k];
    if (r.wtp != other.points[k].wtp) throw std::invalid_argument("curves differ in wtp values");
    if (r.evpi <= min_reference) continue;
    sum += std::abs(other.points[k].evpi - r.evpi) / r.evpi;
    ++count;
  }
  return count == 0 ? std::numeric_limits<double>::quiet_NaN()
                    : sum / static_cast<double>(count);
}

void write_curve_csv(std::ostream& out, const EvpiCurve& curve, NumberFormat format) {
  out << "wtp,evpi,method\n";
  for (const EvpiPoint& p : curve.points) {
    out << format_number(p.wtp, format) << ',' << format_number(p.evpi, format) << ','
        << to_string(curve.method) << '\n';
  }
}

}  // namespace unli
