// Copyright 2026 The unli Authors.
// SPDX-License-Identifier: Apache-2.0

// Seeded Monte Carlo estimation of E[max(Y1, Y2, 0)] and the factorial
// comparison grid against the closed form.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "unli/format.hpp"
#include "unli/loss_integral.hpp"
#include "unli/random.hpp"

namespace unli {

struct BvnDraw {
  double y1;
  double y2;
};

/// Random access to draws from a bivariate normal. Draw k uses stream
/// counters 2k and 2k + 1:
///   Y1 = mu1 + sigma1 Z1,  Y2 = mu2 + sigma2 (rho Z1 + sqrt(1 - rho^2) Z2).
class BvnSampler {
 public:
  BvnSampler(const BvnParams& p, std::uint64_t seed) noexcept;
  BvnDraw operator()(std::uint64_t k) const noexcept;

 private:
  BvnParams params_;
  double root_;
  CounterStream stream_;
};

std::vector<BvnDraw> sample_bvn(const BvnParams& p, std::size_t n, std::uint64_t seed);

/// Monte Carlo mean with its standard error (unbiased variance over sqrt(n)).
struct McEstimate {
  double mean;
  double std_error;
  std::uint64_t n;
  std::uint64_t seed;
};

/// Mean of max(y1, y2, 0) over n >= 2 draws.
McEstimate mc_unli_2d(const BvnParams& p, std::size_t n, std::uint64_t seed);

/// Factorial design over (mu1, mu2, var1, var2, rho). Cells are enumerated
/// with rho outermost, then var2, var1, mu2, and mu1 varying fastest.
struct GridSpec {
  std::vector<double> mu_values;
  std::vector<double> var_values;
  std::vector<double> rho_values;

  /// mu in {-2, 0, 2}, variance in {1, 3}, rho in {-0.75, -0.5, ..., 0.75}:
  /// 252 cells.
  static GridSpec factorial_default();

  std::size_t size() const noexcept;

  /// (mu1, mu2, var1, var2, rho) of a cell.
  struct Coordinates {
    double mu1, mu2, var1, var2, rho;
  };
  Coordinates coordinates(std::size_t index) const;
  BvnParams cell(std::size_t index) const;
};

struct GridRow {
  double mu1;
  double mu2;
  double var1;
  double var2;
  double rho;
  double closed;
  double mc;
  double mc_se;
  double diff;  // closed - mc
};

/// One row per cell in enumeration order. Cell k is sampled with
/// derive_seed(seed, k); `workers` == 0 uses the hardware concurrency. The
/// result does not depend on `workers`.
std::vector<GridRow> run_grid(const GridSpec& grid, std::size_t n, std::uint64_t seed,
                              unsigned workers = 0);

/// CSV with header mu1,mu2,var1,var2,rho,closed,mc,mc_se,diff.
void write_grid_csv(std::ostream& out, const std::vector<GridRow>& rows,
                    NumberFormat format = NumberFormat::significant10);

}  // namespace unli
