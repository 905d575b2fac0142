// Copyright 2026 The unli Authors.
// SPDX-License-Identifier: Apache-2.0

// Unit normal loss integrals: E[max(Y, 0)] for normal Y and
// E[max(Y1, Y2, 0)] for bivariate normal (Y1, Y2), both in closed form.

#pragma once

#include "unli/normal.hpp"

namespace unli {

/// Which of the two incremental net benefits a term refers to.
enum class Index { one = 1, two = 2 };

/// Mean, standard deviation and correlation of a bivariate normal (Y1, Y2).
/// All fields finite, both sigmas positive, |rho| <= 1 - 1e-12.
class BvnParams {
 public:
  BvnParams(double mu1, double mu2, double sigma1, double sigma2, double rho);

  double mu1() const noexcept { return mu1_; }
  double mu2() const noexcept { return mu2_; }
  double sigma1() const noexcept { return sigma1_; }
  double sigma2() const noexcept { return sigma2_; }
  Correlation rho() const noexcept { return rho_; }

  double mu(Index i) const noexcept { return i == Index::one ? mu1_ : mu2_; }
  double sigma(Index i) const noexcept { return i == Index::one ? sigma1_ : sigma2_; }

  /// Same distribution with the two components relabelled.
  BvnParams swapped() const { return {mu2_, mu1_, sigma2_, sigma1_, rho_}; }

  /// max(|mu1|, |mu2|, sigma1, sigma2); the natural magnitude for tolerances.
  double scale() const noexcept;

 private:
  double mu1_;
  double mu2_;
  double sigma1_;
  double sigma2_;
  Correlation rho_;
};

/// Largest |rho| accepted by BvnParams.
inline constexpr double kMaxAbsRho = 1.0 - 1e-12;

/// sigma_i - rho * sigma_j counts as zero when within this fraction of
/// max(sigma_i, sigma_j).
inline constexpr double kDegenerateTolerance = 1e-10;

/// Quantities entering the (i, j) term. When `degenerate` is set
/// (sigma_i == rho * sigma_j up to kDegenerateTolerance) alpha and beta do not
/// exist and every field other than the flag is NaN.
struct TermIntermediates {
  double alpha;
  double beta;
  double a1;
  double b1;
  double a2;
  double b2;
  double t1;
  double t2;
  bool degenerate;
};

struct Unli2dBreakdown {
  double u12;
  double v12;
  double u21;
  double v21;
  double total;
};

/// E[max(Y, 0)] for Y ~ N(mu, sigma^2).
double unli_1d(double mu, double sigma);

TermIntermediates term_intermediates(const BvnParams& p, Index i, Index j);

/// Boundary term of the integration by parts for strategy i against j.
double u_term(const BvnParams& p, Index i, Index j);

/// Integral term for strategy i against j; u_term + v_term is
/// E[Y_i 1{Y_i > Y_j, Y_i > 0}]. Zero on the degenerate branch.
double v_term(const BvnParams& p, Index i, Index j);

/// u_term + v_term, E[Y_i 1{Y_i > Y_j, Y_i > 0}], as one nonnegative quantity.
double pair_term(const BvnParams& p, Index i, Index j);

/// E[max(Y1, Y2, 0)] with its four constituent terms.
Unli2dBreakdown unli_2d(const BvnParams& p);

namespace detail {

/// How the second Phi2 limit and the trailing Phi argument treat beta.
/// `absolute` uses -alpha/|beta| (valid for either sign of beta); `signed_beta`
/// uses -alpha/beta, which agrees only when beta > 0.
enum class BetaLimit { absolute, signed_beta };

/// v_term evaluated literally from TermIntermediates, without the algebraic
/// simplifications used by v_term. Kept for cross-checks.
double v_term_literal(const BvnParams& p, Index i, Index j,
                      BetaLimit convention = BetaLimit::absolute);

}  // namespace detail
}  // namespace unli
