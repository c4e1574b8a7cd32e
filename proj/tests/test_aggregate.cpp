#include <gtest/gtest.h>

#include "oracles.hpp"
#include "uqseg/aggregate.hpp"
#include "uqseg/simulate.hpp"

using namespace uqseg;

TEST(Mean, SinglePlaneIsIdentity) {
  const auto s = ProbStack::create(2, 2, 1, {0.1f, 0.2f, 0.3f, 0.4f});
  const auto m = mean_prediction(s);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(m[i], static_cast<double>(s.at(0, i)));
}

TEST(Mean, TwoIterations) {
  const auto s = ProbStack::create(1, 1, 2, {0.9f, 1.0f});
  EXPECT_NEAR(mean_prediction(s)[0], 0.95, 1e-7);  // float storage of 0.9
}

TEST(Mean, MatchesPerPixelLoop) {
  Rng rng(21);
  for (int t = 0; t < 50; ++t) {
    const auto s = oracle::random_stack(rng, 4, 4, 5);
    const auto m = mean_prediction(s);
    for (std::size_t p = 0; p < 16; ++p) EXPECT_NEAR(m[p], oracle::mean_at(s, p), 1e-12);
  }
}

TEST(Threshold, BoundaryIsExclusive) {
  const Grid g({3, 1}, {0.95, 0.951, 0.9499});
  EXPECT_EQ(threshold_prediction(g), BinaryMask({3, 1}, {0, 1, 0}));
}

TEST(Threshold, AllZeroGrid) {
  const Grid g({2, 2}, std::vector<double>(4, 0.0));
  EXPECT_EQ(threshold_prediction(g), BinaryMask::zeros({2, 2}));
}

TEST(Threshold, CustomThreshold) {
  AggregationConfig cfg;
  cfg.threshold = 0.5;
  const Grid g({2, 1}, {0.5, 0.6});
  EXPECT_EQ(threshold_prediction(g, cfg), BinaryMask({2, 1}, {0, 1}));
}

TEST(Percentile, LinearInterpolation) {
  const std::vector<double> v{0.0, 0.5, 1.0};
  EXPECT_NEAR(percentile_sorted(v, 33), 0.33, 1e-15);
  EXPECT_NEAR(percentile_sorted(v, 67), 0.67, 1e-15);
  EXPECT_EQ(percentile_sorted(v, 0), 0.0);
  EXPECT_EQ(percentile_sorted(v, 100), 1.0);
  EXPECT_EQ(percentile_sorted(std::vector<double>{0.4}, 67), 0.4);
}

TEST(Uncertainty, ThreeValueSpread) {
  const auto s = ProbStack::create(1, 1, 3, {1.0f, 0.0f, 0.5f});
  EXPECT_NEAR(uncertainty_map(s)[0], 0.34, 1e-12);
}

TEST(Uncertainty, ConstantPixelIsZero) {
  const auto s = ProbStack::create(2, 1, 4, {0.3f, 0.7f, 0.3f, 0.7f, 0.3f, 0.7f, 0.3f, 0.7f});
  const auto u = uncertainty_map(s);
  EXPECT_EQ(u[0], 0.0);
  EXPECT_EQ(u[1], 0.0);
}

TEST(Uncertainty, SinglePlaneIsZero) {
  Rng rng(2);
  const auto s = oracle::random_stack(rng, 5, 3, 1);
  const auto u = uncertainty_map(s);
  for (double v : u.values()) EXPECT_EQ(v, 0.0);
}

TEST(Uncertainty, MatchesSortedOracle) {
  Rng rng(22);
  for (int t = 0; t < 50; ++t) {
    const auto s = oracle::random_stack(rng, 1 + rng.below(6), 1 + rng.below(6), 1 + rng.below(9));
    const auto u = uncertainty_map(s);
    for (std::size_t p = 0; p < s.shape().pixels(); ++p) EXPECT_NEAR(u[p], oracle::spread_at(s, p), 1e-12);
  }
}

TEST(Uncertainty, OtherPercentiles) {
  AggregationConfig cfg;
  cfg.percentile_low = 0;
  cfg.percentile_high = 100;
  const auto s = ProbStack::create(1, 1, 4, {0.2f, 0.9f, 0.4f, 0.1f});
  EXPECT_NEAR(uncertainty_map(s, cfg)[0], 0.8, 1e-7);
}

TEST(Uncertainty, BoundedByRange) {
  Rng rng(23);
  for (int t = 0; t < 30; ++t) {
    const auto s = oracle::random_stack(rng, 3, 3, 7);
    const auto u = uncertainty_map(s);
    for (double v : u.values()) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(AggregationConfigCheck, RejectsBadPercentiles) {
  AggregationConfig cfg;
  cfg.percentile_low = 70;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.percentile_high = 101;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.threshold = 1.5;
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(Aggregate, EqualsIndependentOperations) {
  Rng rng(24);
  for (int t = 0; t < 20; ++t) {
    const auto s = oracle::random_stack(rng, 4, 3, 6);
    const auto a = aggregate(s);
    EXPECT_EQ(a.mean, mean_prediction(s));
    EXPECT_EQ(a.prediction, threshold_prediction(mean_prediction(s)));
    EXPECT_EQ(static_cast<const Grid&>(a.uncertainty), static_cast<const Grid&>(uncertainty_map(s)));
  }
}

TEST(Aggregate, EmptyLesionNoiselessStack) {
  SimulatorConfig cfg;
  cfg.width = cfg.height = 16;
  cfg.alpha = 10;
  const auto gt = BinaryMask::zeros({16, 16});
  Rng rng(1);
  const auto s = simulate_stack(gt, cfg, 0.0, rng);
  const auto a = aggregate(s);
  EXPECT_EQ(a.prediction, gt);
  for (double v : a.uncertainty.values()) EXPECT_LT(v, 1e-12);
  for (double v : a.mean.values()) EXPECT_LT(v, 0.02);
}
