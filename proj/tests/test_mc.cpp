// Copyright 2026 The unli Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "unli/loss_integral.hpp"
#include "unli/mc.hpp"
#include "unli/random.hpp"

namespace {

using unli::BvnParams;

double sample_corr(const std::vector<unli::BvnDraw>& d) {
  double m1 = 0, m2 = 0;
  for (const auto& x : d) {
    m1 += x.y1;
    m2 += x.y2;
  }
  m1 /= d.size();
  m2 /= d.size();
  double s11 = 0, s22 = 0, s12 = 0;
  for (const auto& x : d) {
    s11 += (x.y1 - m1) * (x.y1 - m1);
    s22 += (x.y2 - m2) * (x.y2 - m2);
    s12 += (x.y1 - m1) * (x.y2 - m2);
  }
  return s12 / std::sqrt(s11 * s22);
}

TEST(CounterStream, UniformsOpenInterval) {
  const unli::CounterStream s(42);
  for (std::uint64_t k = 0; k < 100000; ++k) {
    const double u = s.uniform(k);
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(CounterStream, BelowInRangeAndCoversAll) {
  const unli::CounterStream s(7);
  std::vector<int> seen(13, 0);
  for (std::uint64_t k = 0; k < 13000; ++k) {
    const auto v = s.below(k, 13);
    ASSERT_LT(v, 13u);
    ++seen[v];
  }
  for (int c : seen) EXPECT_GT(c, 800);
}

TEST(CounterStream, DerivedSeedsDiffer) {
  EXPECT_NE(unli::derive_seed(1, 0), unli::derive_seed(1, 1));
  EXPECT_NE(unli::derive_seed(1, 0), unli::derive_seed(2, 0));
  EXPECT_EQ(unli::derive_seed(9, 3), unli::derive_seed(9, 3));
}

TEST(CounterStream, NormalMoments) {
  const unli::CounterStream s(2024);
  const std::size_t n = 1000000;
  double m = 0, m2 = 0;
  for (std::uint64_t k = 0; k < n; ++k) {
    const double z = s.normal(k);
    m += z;
    m2 += z * z;
  }
  m /= n;
  m2 /= n;
  EXPECT_NEAR(m, 0.0, 4.0 / std::sqrt(n));
  EXPECT_NEAR(m2, 1.0, 4.0 * std::sqrt(2.0 / n));
}

TEST(SampleBvn, IndependentCorrelation) {
  const std::size_t n = 1000000;
  const auto d = unli::sample_bvn(BvnParams(0, 0, 1, 1, 0), n, 1);
  ASSERT_EQ(d.size(), n);
  EXPECT_NEAR(sample_corr(d), 0.0, 4.0 / std::sqrt(n));
}

TEST(SampleBvn, CorrelatedCorrelation) {
  const auto d = unli::sample_bvn(BvnParams(0, 0, 1, 1, 0.5), 1000000, 2);
  EXPECT_NEAR(sample_corr(d), 0.5, 0.004);
}

TEST(SampleBvn, MomentsMatchParameters) {
  const BvnParams p(3, -1, 2, 0.5, -0.3);
  const std::size_t n = 400000;
  const auto d = unli::sample_bvn(p, n, 3);
  double m1 = 0, m2 = 0;
  for (const auto& x : d) {
    m1 += x.y1;
    m2 += x.y2;
  }
  EXPECT_NEAR(m1 / n, 3.0, 4 * 2 / std::sqrt(n));
  EXPECT_NEAR(m2 / n, -1.0, 4 * 0.5 / std::sqrt(n));
  EXPECT_NEAR(sample_corr(d), -0.3, 4 * (1 - 0.09) / std::sqrt(n));
}

TEST(SampleBvn, Deterministic) {
  const BvnParams p(0.5, -1, 1, 2, 0.3);
  const auto a = unli::sample_bvn(p, 100, 99);
  const auto b = unli::sample_bvn(p, 100, 99);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].y1, b[k].y1);
    EXPECT_EQ(a[k].y2, b[k].y2);
  }
  const unli::BvnSampler sampler(p, 99);
  EXPECT_EQ(sampler(57).y1, a[57].y1);
  EXPECT_EQ(sampler(57).y2, a[57].y2);
  EXPECT_NE(unli::sample_bvn(p, 100, 100)[0].y1, a[0].y1);
  EXPECT_THROW(unli::sample_bvn(p, 0, 1), std::invalid_argument);
}

TEST(McUnli2d, Examples) {
  const auto a = unli::mc_unli_2d(BvnParams(0, 0, 1, 1, 0), 100000, 5);
  EXPECT_GT(a.std_error, 0.001);
  EXPECT_LT(a.std_error, 0.003);
  EXPECT_NEAR(a.mean, unli::unli_2d(BvnParams(0, 0, 1, 1, 0)).total, 4 * a.std_error);
  EXPECT_EQ(a.n, 100000u);
  EXPECT_EQ(a.seed, 5u);

  const auto b = unli::mc_unli_2d(BvnParams(-2, -2, 1, 1, -0.75), 100000, 6);
  EXPECT_NEAR(b.mean, 0.017, 0.002);

  const auto c = unli::mc_unli_2d(BvnParams(5, -50, 1, 1, 0), 1000, 7);
  EXPECT_NEAR(c.mean, 5.0, 4 * c.std_error);
  EXPECT_THROW(unli::mc_unli_2d(BvnParams(0, 0, 1, 1, 0), 1, 1), std::invalid_argument);
}

TEST(McUnli2d, StandardErrorHalvesWithFourTimesDraws) {
  const BvnParams p(0.3, -0.2, 1.5, 0.8, 0.4);
  const auto a = unli::mc_unli_2d(p, 50000, 11);
  const auto b = unli::mc_unli_2d(p, 200000, 12);
  EXPECT_NEAR(a.std_error / b.std_error, 2.0, 0.2);
}

TEST(McUnli2d, AtLeastSampleMeans) {
  const BvnParams p(-0.4, 0.1, 1.0, 2.0, 0.6);
  const std::size_t n = 20000;
  const auto est = unli::mc_unli_2d(p, n, 13);
  const auto d = unli::sample_bvn(p, n, 13);
  double m1 = 0, m2 = 0;
  for (const auto& x : d) {
    m1 += x.y1;
    m2 += x.y2;
  }
  EXPECT_GE(est.mean, std::max({m1 / n, m2 / n, 0.0}) - 4 * est.std_error);
}

TEST(GridSpec, DefaultEnumeration) {
  const auto g = unli::GridSpec::factorial_default();
  ASSERT_EQ(g.size(), 252u);
  const auto first = g.coordinates(0);
  EXPECT_EQ(first.mu1, -2.0);
  EXPECT_EQ(first.mu2, -2.0);
  EXPECT_EQ(first.var1, 1.0);
  EXPECT_EQ(first.var2, 1.0);
  EXPECT_EQ(first.rho, -0.75);
  const auto second = g.coordinates(1);
  EXPECT_EQ(second.mu1, 0.0);
  EXPECT_EQ(second.mu2, -2.0);
  const auto last = g.coordinates(251);
  EXPECT_EQ(last.mu1, 2.0);
  EXPECT_EQ(last.var2, 3.0);
  EXPECT_EQ(last.rho, 0.75);
  EXPECT_DOUBLE_EQ(g.cell(251).sigma2(), std::sqrt(3.0));
  EXPECT_THROW(g.coordinates(252), std::out_of_range);
}

TEST(RunGrid, SingleCellMatchesDirectCall) {
  unli::GridSpec g{{1.0}, {2.0}, {0.25}};
  const auto rows = unli::run_grid(g, 5000, 77, 1);
  ASSERT_EQ(rows.size(), 1u);
  const auto direct = unli::mc_unli_2d(g.cell(0), 5000, unli::derive_seed(77, 0));
  EXPECT_EQ(rows[0].mc, direct.mean);
  EXPECT_EQ(rows[0].mc_se, direct.std_error);
  EXPECT_EQ(rows[0].closed, unli::unli_2d(g.cell(0)).total);
  EXPECT_EQ(rows[0].diff, rows[0].closed - rows[0].mc);
}

TEST(RunGrid, IdenticalAcrossWorkerCounts) {
  const auto g = unli::GridSpec::factorial_default();
  const auto serial = unli::run_grid(g, 200, 3, 1);
  for (unsigned w : {2u, 5u, 0u}) {
    const auto parallel = unli::run_grid(g, 200, 3, w);
    ASSERT_EQ(parallel.size(), serial.size());
    for (std::size_t k = 0; k < serial.size(); ++k) {
      EXPECT_EQ(parallel[k].mc, serial[k].mc);
      EXPECT_EQ(parallel[k].mc_se, serial[k].mc_se);
    }
  }
}

TEST(RunGrid, CsvFormat) {
  const auto g = unli::GridSpec::factorial_default();
  const auto rows = unli::run_grid(g, 100, 1, 1);
  std::ostringstream out;
  unli::write_grid_csv(out, rows);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "mu1,mu2,var1,var2,rho,closed,mc,mc_se,diff");
  std::getline(in, line);
  EXPECT_EQ(line.rfind("-2,-2,1,1,-0.75,0.01698140521,", 0), 0u) << line;
  std::size_t count = 1;
  while (std::getline(in, line)) ++count;
  EXPECT_EQ(count, 252u);

  std::ostringstream fixed;
  unli::write_grid_csv(fixed, rows, unli::NumberFormat::fixed3);
  EXPECT_NE(fixed.str().find("\n-2.000,-2.000,1.000,1.000,-0.750,0.017,"), std::string::npos);
}

}  // namespace
