#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "besovbm/besov.hpp"
#include "besovbm/simulate.hpp"

using namespace besovbm;
using namespace besovbm::besov;

namespace {

const double kOne[] = {1.0};

PathSample linear_path(int depth) {
  return PathSample::from_function(SpaceSpec::scalar(), depth, [](double t) { return Vector{t}; });
}

PathSample constant_path(int depth, double c) {
  return PathSample::from_function(SpaceSpec::scalar(), depth, [c](double) { return Vector{c}; });
}

PathSample bm(int depth, std::uint64_t i) { return sample_bm(SpaceSpec::scalar(), kOne, depth, RngSeed{99, 0}.substream(i)); }

} // namespace

TEST(LpNorm, ConstantLinearZero) {
  for (double p : {1.0, 2.0, 3.5, kInf}) EXPECT_NEAR(lp_norm_path(constant_path(8, -1.5), p), 1.5, 1e-12);
  const double h = std::exp2(-12);
  // left Riemann sum of t^2: (1/3)(1 - h)(1 - h/2)
  EXPECT_NEAR(lp_norm_path(linear_path(12), 2.0), std::sqrt((1 - h) * (1 - h / 2) / 3), 1e-12);
  EXPECT_NEAR(lp_norm_path(linear_path(12), 2.0), 1 / std::sqrt(3.0), h);
  EXPECT_EQ(lp_norm_path(constant_path(6, 0.0), 2.0), 0.0);
}

TEST(LpNorm, SubIntervalAlignment) {
  const auto path = linear_path(4);
  EXPECT_NO_THROW(lp_norm_path(path, 2.0, {0.25, 0.5}));
  EXPECT_THROW(lp_norm_path(path, 2.0, {0.1, 0.5}), std::invalid_argument);
  EXPECT_THROW(lp_norm_path(path, 2.0, {0.5, 0.25}), std::invalid_argument);
  // t on [1/2, 1): max over grid points is 1 - 1/16
  EXPECT_DOUBLE_EQ(lp_norm_path(path, kInf, {0.5, 1.0}), 15.0 / 16.0);
}

TEST(DyadicIncrement, LinearClosedForm) {
  for (int n : {1, 3, 6}) {
    for (double p : {1.0, 2.0, 5.0}) {
      const double expected = std::exp2(-n) * std::pow(1 - std::exp2(-n), 1 / p);
      EXPECT_NEAR(dyadic_increment_lp(linear_path(12), n, p), expected, 1e-12);
    }
  }
  EXPECT_EQ(dyadic_increment_lp(constant_path(10, 3.0), 4, 2.0), 0.0);
  EXPECT_THROW(dyadic_increment_lp(linear_path(6), 7, 2.0), std::invalid_argument);
}

TEST(DyadicIncrement, ScaledBmMeanAtScaleEight) {
  double sum = 0.0;
  for (int i = 0; i < 200; ++i) sum += std::exp2(4.0) * dyadic_increment_lp(bm(16, i), 8, 2.0);
  EXPECT_NEAR(sum / 200, 1.0, 0.05);
}

TEST(Seminorm, LinearPathSupAtFirstScale) {
  EXPECT_NEAR(besov_seminorm(linear_path(14), {0.5, 2.0, kInf, 0}), 0.5, 1e-12);
  EXPECT_EQ(besov_seminorm(constant_path(10, 2.0), {0.5, 2.0, kInf, 0}), 0.0);
  const auto r = besov_norm(linear_path(14), {0.5, 2.0, kInf, 0});
  EXPECT_NEAR(r.total, 1 / std::sqrt(3.0) + 0.5, 1e-4);
  EXPECT_DOUBLE_EQ(r.total, r.lp_part + r.seminorm_part);
  ASSERT_EQ(r.per_scale.size(), 8u);
  EXPECT_EQ(r.per_scale.front().first, 1);
  EXPECT_EQ(besov_norm(constant_path(8, 0.0), {0.5, 2.0, kInf, 0}).total, 0.0);
}

TEST(Seminorm, ParamValidation) {
  const auto path = linear_path(10);
  EXPECT_THROW(besov_seminorm(path, {0.5, 2.0, kInf, 5}), std::invalid_argument);  // > depth - 6
  EXPECT_THROW(besov_seminorm(path, {1.0, 2.0, kInf, 0}), std::invalid_argument);
  EXPECT_THROW(besov_seminorm(path, {0.5, 0.5, kInf, 0}), std::invalid_argument);
  EXPECT_THROW(besov_seminorm(path, {0.5, 2.0, 0.5, 0}), std::invalid_argument);
  EXPECT_EQ(resolve_n_max(0, 16), 10);
}

TEST(Seminorm, QSumGrowsWithScales) {
  // the terms stay near c_p, so partial 2-sums grow like sqrt(n)
  int grew = 0;
  double ratio_sum = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto profile = scale_profile(bm(18, i), 0.5, 2.0, 12);
    const auto sums = partial_q_sums(profile, 2.0);
    grew += sums[11] > sums[8] ? 1 : 0;
    ratio_sum += sums[11] / sums[8];
  }
  EXPECT_GE(grew, 190);
  EXPECT_NEAR(ratio_sum / 200, std::sqrt(12.0 / 9.0), 0.05);
}

TEST(Seminorm, FiniteForBmPaths) {
  for (int i = 0; i < 20; ++i) {
    const auto r = besov_norm(bm(16, i), {0.5, 2.0, kInf, 0});
    EXPECT_TRUE(std::isfinite(r.total));
    EXPECT_GT(r.total, 0.0);
  }
}

TEST(Homogeneity, AllPathNormsScaleLinearly) {
  const auto path = bm(12, 3);
  const auto scaled = path.scaled(2.75);
  auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };
  EXPECT_LT(rel(lp_norm_path(scaled, 3.0), 2.75 * lp_norm_path(path, 3.0)), 1e-9);
  EXPECT_LT(rel(besov_norm(scaled, {0.5, 2.0, 2.0, 0}).total, 2.75 * besov_norm(path, {0.5, 2.0, 2.0, 0}).total), 1e-9);
  EXPECT_LT(rel(exp_orlicz_lp_norm(scaled, 2.0, 32), 2.75 * exp_orlicz_lp_norm(path, 2.0, 32)), 1e-9);
  EXPECT_LT(rel(besov_orlicz_norm(scaled, 0.5, 2.0, 32), 2.75 * besov_orlicz_norm(path, 0.5, 2.0, 32)), 1e-9);
  EXPECT_LT(rel(luxemburg_function_norm(scaled, 2.0), 2.75 * luxemburg_function_norm(path, 2.0)), 1e-8);
}

TEST(Monotonicity, InNmaxAndPmax) {
  const auto path = bm(16, 4);
  double prev = 0.0;
  for (int n = 1; n <= 10; ++n) {
    const double v = besov_seminorm(path, {0.5, 2.0, kInf, n});
    EXPECT_GE(v, prev);
    prev = v;
  }
  prev = 0.0;
  for (int pm : {8, 16, 32, 64, 128}) {
    const double v = besov_orlicz_norm(path, 0.5, 2.0, pm);
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(IntegerProfile, MatchesDirectComputation) {
  const auto path = sample_bm(SpaceSpec::finite_lq(3, 1.5), std::vector<double>{1, 0.5, 0.2}, 12, RngSeed{1, 1});
  const auto prof = integer_p_profile(path, 16, 0);
  for (int p : {1, 2, 5, 16}) {
    EXPECT_NEAR(prof.besov_total(p, 0.5), besov_norm(path, {0.5, static_cast<double>(p), kInf, 0}).total,
                1e-12 * prof.besov_total(p, 0.5));
  }
}

TEST(ExpOrlicz, ConstantZeroAndStability) {
  EXPECT_NEAR(exp_orlicz_lp_norm(constant_path(8, 2.0), 2.0, 64), 2.0, 1e-12);
  EXPECT_EQ(exp_orlicz_lp_norm(constant_path(8, 0.0), 2.0, 64), 0.0);
  EXPECT_THROW(exp_orlicz_lp_norm(constant_path(8, 1.0), 2.0, 4), std::invalid_argument);
  for (int i = 0; i < 20; ++i) {
    const auto path = bm(16, 100 + i);
    const double a = exp_orlicz_lp_norm(path, 2.0, 64);
    const double b = exp_orlicz_lp_norm(path, 2.0, 128);
    EXPECT_LT((b - a) / a, 0.01);
  }
}

TEST(BesovOrlicz, DominatesEachTermAndEmbeds) {
  EXPECT_EQ(besov_orlicz_norm(constant_path(10, 0.0), 0.5, 2.0, 64), 0.0);
  for (int i = 0; i < 10; ++i) {
    const auto path = bm(16, 200 + i);
    const double orl = besov_orlicz_norm(path, 0.5, 2.0, 64);
    EXPECT_TRUE(std::isfinite(orl));
    for (double p : {1.0, 2.0, 4.0, 8.0}) {
      const double b = besov_norm(path, {0.5, p, kInf, 0}).total;
      EXPECT_GE(orl + 1e-12, std::pow(p, -0.5) * b) << p;
      EXPECT_LE(b, std::sqrt(p) * orl + 1e-9);
    }
  }
}

TEST(LuxemburgFunction, ConstantAndDomination) {
  EXPECT_EQ(luxemburg_function_norm(constant_path(8, 0.0), 2.0), 0.0);
  EXPECT_NEAR(luxemburg_function_norm(constant_path(8, 1.3), 2.0), 1.3 / std::sqrt(std::log(2.0)), 1e-6);
  EXPECT_THROW(luxemburg_function_norm(constant_path(8, 1.0), 0.5), std::invalid_argument);
  for (int i = 0; i < 100; ++i) {
    const auto path = bm(10, 300 + i);
    EXPECT_LE(exp_orlicz_lp_norm(path, 2.0, 64), luxemburg_function_norm(path, 2.0) * (1 + 1e-9));
  }
}
