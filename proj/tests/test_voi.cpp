// Copyright 2026 The unli Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "three_strategy.hpp"
#include "unli/mc.hpp"
#include "unli/voi.hpp"

namespace {

using unli::BvnParams;
using unli::evpi_three;
using unli::evpi_two;

TEST(EvpiTwo, Examples) {
  EXPECT_NEAR(evpi_two(0, 1), 0.3989422804014327, 1e-15);
  EXPECT_NEAR(evpi_two(10, 1), 0.0, 1e-10);
  // Quadrature gives 0.395593114802612059 here.
  EXPECT_NEAR(evpi_two(-1, 2), 0.395593114802612059, 1e-14);
  EXPECT_NEAR(evpi_two(-1, 2), oracle::unli_1d(-1, 2), 1e-12);
  EXPECT_THROW(evpi_two(0, 0), std::domain_error);
  EXPECT_THROW(evpi_two(0, -2), std::domain_error);
}

TEST(EvpiTwo, NonNegative) {
  for (double mu = -20; mu <= 20; mu += 0.5) EXPECT_GE(evpi_two(mu, 1.3), 0.0);
}

TEST(EvpiThree, CaseStudy) {
  const double v = evpi_three(BvnParams(-4734, -2668, 4678, 4645, 0.5));
  EXPECT_EQ(std::lround(v), 1019);
  EXPECT_NEAR(v, 1018.95288326201447, 1e-8);
}

TEST(EvpiThree, CertainReferenceIsZero) {
  EXPECT_NEAR(evpi_three(BvnParams(-1e6, -1e6, 1, 1, 0)), 0.0, 1e-9);
}

TEST(EvpiThree, ReducesToTwoStrategy) {
  for (double mu : {-3.0, -1.0, 0.0, 0.7, 2.5}) {
    for (double sigma : {0.5, 1.0, 4.0}) {
      const double two = evpi_two(mu, sigma);
      EXPECT_NEAR(evpi_three(BvnParams(mu, -1e6 * sigma, sigma, sigma, 0)), two, 1e-6 * two);
    }
  }
}

TEST(EvpiThree, MatchesMonteCarlo) {
  const std::vector<BvnParams> cases = {
      {0.2, -0.1, 1.0, 0.7, 0.3}, {-1.0, -0.5, 2.0, 1.0, -0.6}, {1.5, 1.2, 0.8, 1.1, 0.9}};
  std::uint64_t seed = 100;
  for (const auto& p : cases) {
    const auto mc = unli::mc_unli_2d(p, 200000, seed++);
    const double offset = std::max({p.mu1(), p.mu2(), 0.0});
    EXPECT_NEAR(evpi_three(p), mc.mean - offset, 4 * mc.std_error);
  }
}

TEST(EvpiThree, ReferenceRelabellingInvariance) {
  for (const auto& s : testing_support::random_three_strategy(100, 21)) {
    const double e0 = evpi_three(testing_support::against_reference(s, 0));
    EXPECT_GE(e0, 0.0);
    for (int ref : {1, 2}) {
      const double e = evpi_three(testing_support::against_reference(s, ref));
      EXPECT_NEAR(e, e0, 1e-9 * e0) << ref;
    }
  }
}

TEST(WtpGrid, Values) {
  const auto g = unli::wtp_grid(0, 100000, 5000);
  ASSERT_EQ(g.size(), 21u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g.back(), 100000.0);
  EXPECT_EQ(g[7], 35000.0);
  EXPECT_EQ(unli::wtp_grid(10, 20, 50), std::vector<double>{10});
  EXPECT_EQ(unli::wtp_grid(0, 0.3, 0.1).size(), 4u);
  EXPECT_THROW(unli::wtp_grid(0, 10, 0), std::domain_error);
  EXPECT_THROW(unli::wtp_grid(10, 0, 1), std::domain_error);
  EXPECT_THROW(unli::wtp_grid(0, INFINITY, 1), std::domain_error);
}

TEST(EvpiCurveClosed, Composition) {
  const BvnParams p(-4734, -2668, 4678, 4645, 0.5);
  const std::vector<double> one{50000};
  const auto curve = unli::evpi_curve_closed([&](double) { return p; }, one);
  ASSERT_EQ(curve.points.size(), 1u);
  EXPECT_EQ(curve.points[0].evpi, evpi_three(p));
  EXPECT_EQ(curve.method, unli::EvpiMethod::closed_form);
}

TEST(EvpiCurveClosed, HopelessAlternativesGiveZeroCurve) {
  const auto wtps = unli::wtp_grid(0, 1000, 100);
  const auto curve = unli::evpi_curve_closed(
      [](double w) { return BvnParams(-1e7 - w, -2e7, 10, 10, 0.2); }, wtps);
  for (const auto& pt : curve.points) EXPECT_NEAR(pt.evpi, 0.0, 1e-9);
}

TEST(EvpiCurveClosed, RejectsUnorderedWtp) {
  const std::vector<double> bad{0, 10, 10};
  auto at = [](double) { return BvnParams(0, 0, 1, 1, 0); };
  EXPECT_THROW(unli::evpi_curve_closed(at, bad), std::domain_error);
}

TEST(Mrae, Definition) {
  unli::EvpiCurve ref{{{0, 50}, {1, 200}, {2, 400}}, unli::EvpiMethod::closed_form};
  unli::EvpiCurve other{{{0, 0}, {1, 220}, {2, 380}}, unli::EvpiMethod::bootstrap};
  EXPECT_NEAR(unli::mean_relative_absolute_error(ref, other, 100), (0.1 + 0.05) / 2, 1e-15);
  EXPECT_TRUE(std::isnan(unli::mean_relative_absolute_error(ref, other, 1000)));
  unli::EvpiCurve shorter{{{0, 0}}, unli::EvpiMethod::bootstrap};
  EXPECT_THROW(unli::mean_relative_absolute_error(ref, shorter, 100), std::invalid_argument);
}

TEST(CurveCsv, Format) {
  unli::EvpiCurve c{{{0, 12.5}, {5000, 0}}, unli::EvpiMethod::bootstrap};
  std::ostringstream out;
  unli::write_curve_csv(out, c);
  EXPECT_EQ(out.str(), "wtp,evpi,method\n0,12.5,bootstrap\n5000,0,bootstrap\n");
  EXPECT_EQ(unli::to_string(unli::EvpiMethod::closed_form), "closed");
}

}  // namespace
