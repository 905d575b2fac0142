// Copyright 2026 The unli Authors.
// SPDX-License-Identifier: Apache-2.0

#include "unli/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace unli {

BvnSampler::BvnSampler(const BvnParams& p, std::uint64_t seed) noexcept
    : params_(p),
      root_(std::sqrt((1.0 - p.rho()) * (1.0 + p.rho()))),
      stream_(seed) {}

BvnDraw BvnSampler::operator()(std::uint64_t k) const noexcept {
  const double z1 = stream_.normal(2 * k);
  const double z2 = stream_.normal(2 * k + 1);
  const double rho = params_.rho();
  return {params_.mu1() + params_.sigma1() * z1,
          params_.mu2() + params_.sigma2() * (rho * z1 + root_ * z2)};
}

std::vector<BvnDraw> sample_bvn(const BvnParams& p, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_bvn: n must be at least 1");
  const BvnSampler sampler(p, seed);
  std::vector<BvnDraw> draws(n);
  for (std::size_t k = 0; k < n; ++k) draws[k] = sampler(k);
  return draws;
}

McEstimate mc_unli_2d(const BvnParams& p, std::size_t n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("mc_unli_2d: n must be at least 2");
  const BvnSampler sampler(p, seed);
  // Welford
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const BvnDraw d = sampler(k);
    const double x = std::max({d.y1, d.y2, 0.0});
    const double delta = x - mean;
    mean += delta / static_cast<double>(k + 1);
    m2 += delta * (x - mean);
  }
  const double var = m2 / static_cast<double>(n - 1);
  return {mean, std::sqrt(var / static_cast<double>(n)), n, seed};
}

GridSpec GridSpec::factorial_default() {
  return {{-2.0, 0.0, 2.0}, {1.0, 3.0}, {-0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75}};
}

std::size_t GridSpec::size() const noexcept {
  return mu_values.size() * mu_values.size() * var_values.size() * var_values.size() *
         rho_values.size();
}

GridSpec::Coordinates GridSpec::coordinates(std::size_t index) const {
  if (index >= size()) throw std::out_of_range("grid cell index out of range");
  const std::size_t nm = mu_values.size();
  const std::size_t nv = var_values.size();
  Coordinates c{};
  c.mu1 = mu_values[index % nm];
  index /= nm;
  c.mu2 = mu_values[index % nm];
  index /= nm;
  c.var1 = var_values[index % nv];
  index /= nv;
  c.var2 = var_values[index % nv];
  index /= nv;
  c.rho = rho_values[index];
  return c;
}

BvnParams GridSpec::cell(std::size_t index) const {
  const Coordinates c = coordinates(index);
  if (!(c.var1 > 0.0) || !(c.var2 > 0.0)) throw std::domain_error("grid variances must be positive");
  return {c.mu1, c.mu2, std::sqrt(c.var1), std::sqrt(c.var2), c.rho};
}

std::vector<GridRow> run_grid(const GridSpec& grid, std::size_t n, std::uint64_t seed,
                              unsigned workers) {
  const std::size_t cells = grid.size();
  // Validate every cell up front so worker threads never throw.
  std::vector<BvnParams> params;
  params.reserve(cells);
  for (std::size_t k = 0; k < cells; ++k) params.push_back(grid.cell(k));
  if (n < 2) throw std::invalid_argument("run_grid: n must be at least 2");

  std::vector<GridRow> rows(cells);
  auto fill = [&](std::size_t k) {
    const BvnParams& p = params[k];
    const double closed = unli_2d(p).total;
    const McEstimate mc = mc_unli_2d(p, n, derive_seed(seed, k));
    const GridSpec::Coordinates c = grid.coordinates(k);
    rows[k] = {c.mu1, c.mu2, c.var1, c.var2, c.rho, closed, mc.mean, mc.std_error,
               closed - mc.mean};
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(cells, 1)));
  if (workers <= 1) {
    for (std::size_t k = 0; k < cells; ++k) fill(k);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < cells; k = next++) fill(k);
    });
  }
  pool.clear();
  return rows;
}

void write_grid_csv(std::ostream& out, const std::vector<GridRow>& rows, NumberFormat format) {
  out << "mu1,mu2,var1,var2,rho,closed,mc,mc_se,diff\n";
  for (const GridRow& r : rows) {
    out << format_number(r.mu1, format) << ',' << format_number(r.mu2, format) << ','
        << format_number(r.var1, format) << ',' << format_number(r.var2, format) << ','
        << format_number(r.rho, format) << ',' << format_number(r.closed, format) << ','
        << format_number(r.mc, format) << ',' << format_number(r.mc_se, format) << ','
        << format_number(r.diff, format) << '\n';
  }
}

}  // namespace unli
