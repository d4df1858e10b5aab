#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "besovbm/gaussmax.hpp"

using namespace besovbm;
using namespace besovbm::gaussmax;

namespace {

constexpr double kRho1 = 0.8387296480382649;  // rho_Theta((1)), Newton oracle

EnsembleSpec scalars(std::size_t k, double sigma = 1.0) {
  EnsembleSpec e;
  for (std::size_t i = 0; i < k; ++i) e.variables.push_back({SpaceSpec::scalar(), orlicz::WeightSeq({sigma})});
  return e;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// E max(|g_1|, ..., |g_k|) = int_0^inf 1 - (2 Phi(t) - 1)^k dt.
double max_abs_oracle(int k) {
  const int n = 40000;
  const double b = 14.0, h = b / n;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double f = 1 - std::pow(2 * normal_cdf(i * h) - 1, k);
    s += f * ((i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2));
  }
  return s * h / 3;
}

// Phi^{-1}(3/4) by bisection on erfc.
double normal_quantile_75() {
  double lo = 0, hi = 2;
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (lo + hi);
    (normal_cdf(m) < 0.75 ? lo : hi) = m;
  }
  return 0.5 * (lo + hi);
}

} // namespace

TEST(Bounds, TrivialAndHomogeneous) {
  const orlicz::WeightSeq zero({0.0});
  EXPECT_EQ(upper_bound_mean(0, zero), 0.0);
  EXPECT_EQ(upper_bound_median(0, zero), 0.0);
  EXPECT_EQ(lower_bound(0, zero), 0.0);
  const orlicz::WeightSeq s({1.0, 0.5});
  const orlicz::WeightSeq s2({2.0, 1.0});
  EXPECT_NEAR(upper_bound_mean(2 * 0.7, s2), 2 * upper_bound_mean(0.7, s), 1e-8);
  EXPECT_NEAR(upper_bound_median(2 * 0.7, s2), 2 * upper_bound_median(0.7, s), 1e-8);
  EXPECT_THROW(upper_bound_mean(-1, s), std::invalid_argument);
}

TEST(Bounds, ScalarValues) {
  const orlicz::WeightSeq one({1.0});
  const double m = std::sqrt(2 / std::numbers::pi);
  EXPECT_NEAR(upper_bound_mean(m, one), m + 3 * kRho1, 1e-8);
  EXPECT_NEAR(kAbsNormalMedian, normal_quantile_75(), 1e-12);
  EXPECT_NEAR(upper_bound_median(kAbsNormalMedian, one), 0.6745 + 2 * kRho1, 1e-4);
  EXPECT_DOUBLE_EQ(lower_bound(2.0, one), 2.0);
  const orlicz::WeightSeq ones(std::vector<double>(100, 1.0));
  EXPECT_NEAR(lower_bound(0.0, ones), orlicz::luxemburg_norm(orlicz::OrliczFunction::theta(), ones) / 3, 1e-15);
}

TEST(RemarkBound, ValuesAndDomination) {
  EXPECT_NEAR(remark_bound(orlicz::WeightSeq({3, 4}), 1.0), 5.0, 1e-12);
  EXPECT_EQ(remark_bound(orlicz::WeightSeq({0, 0}), 2.0), 0.0);
  EXPECT_THROW(remark_bound(orlicz::WeightSeq({1}), 0.5), std::invalid_argument);
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> s(1 + t % 30);
    for (double& x : s) x = u(gen);
    const orlicz::WeightSeq w(s);
    const double rho = rho_theta(w);
    for (double p : {1.0, 2.0, 3.0, 5.0, 10.0}) EXPECT_LE(rho, remark_bound(w, p) + 1e-9) << p;
  }
}

TEST(SupMean, SingleScalar) {
  const auto r = empirical_sup_mean(scalars(1), 10000, RngSeed{1, 0});
  EXPECT_NEAR(r.m, std::sqrt(2 / std::numbers::pi), 1e-15);
  EXPECT_NEAR(r.estimate, std::sqrt(2 / std::numbers::pi), 3 * r.ci_half_width);
  EXPECT_TRUE(r.within_bounds());
  EXPECT_LE(r.lower_bound, r.upper_bound);
}

TEST(SupMean, AllZero) {
  const auto r = empirical_sup_mean(scalars(3, 0.0), 200, RngSeed{1, 0});
  EXPECT_EQ(r.estimate, 0.0);
  EXPECT_EQ(r.upper_bound, 0.0);
  EXPECT_TRUE(r.verdict);
}

TEST(SupMean, PairMatchesQuadrature) {
  const auto r = empirical_sup_mean(scalars(2), 20000, RngSeed{2, 0});
  EXPECT_NEAR(r.estimate, max_abs_oracle(2), r.ci_half_width);
}

TEST(SupMean, RejectsTooFewSamples) {
  EXPECT_THROW(empirical_sup_mean(scalars(1), 50, RngSeed{1, 0}), std::invalid_argument);
}

TEST(SupMean, MonotoneInPrefixEnsembles) {
  double prev = 0.0;
  for (std::size_t k : {1u, 2u, 4u, 8u, 16u, 32u}) {
    const auto r = empirical_sup_mean(scalars(k), 2000, RngSeed{3, 0});
    EXPECT_GE(r.estimate, prev);
    prev = r.estimate;
  }
}

TEST(SupMean, ExtremeValueGrowth) {
  for (int j = 4; j <= 10; ++j) {
    const std::size_t k = std::size_t{1} << j;
    const auto r = empirical_sup_mean(scalars(k), 2000, RngSeed{4, 0});
    const double ratio = r.estimate / std::sqrt(2 * std::log(static_cast<double>(k)));
    EXPECT_GE(ratio, 0.7) << k;
    EXPECT_LE(ratio, 1.3) << k;
    if (j <= 6) { EXPECT_NEAR(r.estimate, max_abs_oracle(static_cast<int>(k)), 3 * r.ci_half_width); }
  }
}

TEST(SupMean, IndependentOfWorkers) {
  EnsembleSpec e;
  for (int i = 0; i < 5; ++i) e.variables.push_back({SpaceSpec::finite_lq(3, 1), orlicz::WeightSeq({1.0, 0.5, 0.1})});
  SupMeanOptions a, b;
  a.workers = 1;
  b.workers = 3;
  a.moment_samples = b.moment_samples = 5000;
  const auto ra = empirical_sup_mean(e, 1000, RngSeed{5, 0}, a);
  const auto rb = empirical_sup_mean(e, 1000, RngSeed{5, 0}, b);
  EXPECT_EQ(ra.estimate, rb.estimate);
  EXPECT_EQ(ra.m, rb.m);
}

TEST(Sandwich, ScalarK256AndGeometricLinf) {
  const auto r = sandwich_check(scalars(256), 10000, RngSeed{6, 0});
  EXPECT_TRUE(r.verdict);
  EXPECT_GE(r.estimate, r.rho / 3);
  EXPECT_LE(r.estimate, r.m + 3 * r.rho);

  EnsembleSpec g;
  double s = 1.0;
  for (int n = 1; n <= 200; ++n) {
    s *= 0.9;
    g.variables.push_back({SpaceSpec::finite_lq(1, kInf), orlicz::WeightSeq({s})});
  }
  EXPECT_TRUE(sandwich_check(g, 10000, RngSeed{7, 0}).verdict);
  EXPECT_TRUE(sandwich_check(scalars(1), 10000, RngSeed{8, 0}).verdict);
}

TEST(Median, SampleMedianAndBound) {
  EXPECT_EQ(sample_median({3.0, 1.0, 2.0}), 2.0);
  EXPECT_EQ(sample_median({4.0, 1.0, 3.0, 2.0}), 2.0);
  EXPECT_THROW(sample_median({}), std::invalid_argument);
  const auto mb = median_bound(scalars(4), 1000, RngSeed{1, 0});
  EXPECT_DOUBLE_EQ(mb.median, kAbsNormalMedian);
  EXPECT_NEAR(mb.upper_bound, mb.median + 2 * mb.rho, 1e-15);

  EnsembleSpec v;
  v.variables.push_back({SpaceSpec::finite_lq(2, kInf), orlicz::WeightSeq({1.0, 1.0})});
  const auto mv = median_bound(v, 20000, RngSeed{2, 0});
  // median of max(|g1|, |g2|): (2 Phi(m) - 1)^2 = 1/2
  double lo = 0, hi = 3;
  for (int i = 0; i < 100; ++i) {
    const double m = 0.5 * (lo + hi);
    (std::pow(2 * normal_cdf(m) - 1, 2) < 0.5 ? lo : hi) = m;
  }
  EXPECT_NEAR(mv.median, lo, 0.02);
  const auto r = empirical_sup_mean(v, 10000, RngSeed{3, 0});
  EXPECT_LE(r.estimate, mv.upper_bound);
}
