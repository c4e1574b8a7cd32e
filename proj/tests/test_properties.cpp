// Randomised property checks; every generator is seeded so failures replay.

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "uqseg/aggregate.hpp"
#include "uqseg/metrics.hpp"
#include "uqseg/regression.hpp"
#include "uqseg/render.hpp"
#include "uqseg/roi.hpp"
#include "uqseg/simulate.hpp"
#include "uqseg/stats.hpp"

using namespace uqseg;

namespace {

constexpr int kCases = 100;

UncertaintyMap random_map(Rng& rng, Shape shape) {
  std::vector<double> v(shape.pixels());
  for (auto& x : v) x = rng.uniform();
  return {shape, std::move(v)};
}

std::vector<DiceRow> random_rows(Rng& rng, std::size_t n) {
  std::vector<DiceRow> rows;
  for (std::size_t i = 0; i < n; ++i) {
    const double x1 = rng.uniform(0, 0.2), x2 = rng.uniform(0, 0.1);
    rows.push_back({"p" + std::to_string(i), kAllClasses[i % 3], (x1 + x2) / 2, x1, x2,
                    0.9 - 2 * x1 - 3 * x2 + rng.normal(0, 0.05)});
  }
  return rows;
}

}  // namespace

TEST(Property, MaskAndComplementSumToOne) {
  Rng rng(81);
  for (int t = 0; t < kCases; ++t) {
    const auto m = oracle::random_mask(rng, {1 + rng.below(9), 1 + rng.below(9)}, rng.uniform());
    const auto c = complement(m);
    for (std::size_t i = 0; i < m.bits().size(); ++i) ASSERT_EQ(m[i] + c[i], 1);
    ASSERT_EQ(complement(c), m);
  }
}

TEST(Property, RaisingThresholdNeverAddsPixels) {
  Rng rng(82);
  for (int t = 0; t < kCases; ++t) {
    const auto mean = mean_prediction(oracle::random_stack(rng, 6, 6, 4));
    AggregationConfig lo, hi;
    lo.threshold = rng.uniform();
    hi.threshold = lo.threshold + rng.uniform() * (1 - lo.threshold);
    const auto a = threshold_prediction(mean, lo), b = threshold_prediction(mean, hi);
    for (std::size_t i = 0; i < a.bits().size(); ++i) ASSERT_LE(b[i], a[i]);
  }
}

TEST(Property, PlaneOrderDoesNotMatter) {
  Rng rng(83);
  for (int t = 0; t < kCases; ++t) {
    const std::size_t w = 1 + rng.below(6), h = 1 + rng.below(6), alpha = 1 + rng.below(8);
    const auto s = oracle::random_stack(rng, w, h, alpha);
    std::vector<std::size_t> order(alpha);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order.begin(), order.end());
    std::vector<float> shuffled;
    for (auto j : order) shuffled.insert(shuffled.end(), s.plane(j).begin(), s.plane(j).end());
    const auto p = ProbStack::create(w, h, alpha, shuffled);
    const auto m1 = mean_prediction(s), m2 = mean_prediction(p);
    for (std::size_t i = 0; i < w * h; ++i) ASSERT_NEAR(m1[i], m2[i], 1e-15);
    ASSERT_EQ(static_cast<const Grid&>(uncertainty_map(s)), static_cast<const Grid&>(uncertainty_map(p)));
  }
}

TEST(Property, SpreadBoundedByRange) {
  Rng rng(84);
  for (int t = 0; t < kCases; ++t) {
    const auto s = oracle::random_stack(rng, 5, 5, 1 + rng.below(10));
    const auto u = uncertainty_map(s);
    for (std::size_t p = 0; p < 25; ++p) {
      float lo = 1, hi = 0;
      for (std::size_t j = 0; j < s.alpha(); ++j) {
        lo = std::min(lo, s.at(j, p));
        hi = std::max(hi, s.at(j, p));
      }
      ASSERT_LE(u[p], static_cast<double>(hi) - static_cast<double>(lo) + 1e-15);
    }
  }
}

TEST(Property, RegionMeansScaleWithMap) {
  Rng rng(85);
  for (int t = 0; t < kCases; ++t) {
    const Shape shape{2 + rng.below(8), 2 + rng.below(8)};
    const auto map = random_map(rng, shape);
    const double c = rng.uniform();
    std::vector<double> scaled(map.values().begin(), map.values().end());
    for (auto& v : scaled) v *= c;
    const auto gt = oracle::random_mask(rng, shape);
    for (auto norm : {Normalization::RegionMean, Normalization::FullImageMean}) {
      const auto a = decompose(map, gt, norm), b = decompose(UncertaintyMap(shape, scaled), gt, norm);
      ASSERT_NEAR(b.x0_overall, c * a.x0_overall, 1e-12);
      ASSERT_EQ(a.x1_lesion.has_value(), b.x1_lesion.has_value());
      if (a.x1_lesion) ASSERT_NEAR(*b.x1_lesion, c * *a.x1_lesion, 1e-12);
      if (a.x2_nonlesion) ASSERT_NEAR(*b.x2_nonlesion, c * *a.x2_nonlesion, 1e-12);
    }
  }
}

TEST(Property, AurocOfReversedScores) {
  Rng rng(86);
  for (int t = 0; t < kCases; ++t) {
    std::vector<double> s(40);
    std::vector<std::uint8_t> y(40);
    for (std::size_t i = 0; i < 40; ++i) {
      s[i] = rng.uniform();  // continuous: no ties
      y[i] = rng.uniform() < 0.5;
    }
    std::vector<double> r(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) r[i] = 1 - s[i];
    const auto a = auroc(s, y), b = auroc(r, y);
    ASSERT_EQ(a.has_value(), b.has_value());
    if (a) ASSERT_NEAR(*b, 1 - *a, 1e-12);
  }
}

TEST(Property, ResidualsOrthogonalToColumns) {
  Rng rng(87);
  const auto spec = ModelSpec::create({Predictor::X1, Predictor::X2});
  for (int t = 0; t < 30; ++t) {
    const auto rows = random_rows(rng, 20 + rng.below(200));
    const auto f = fit(rows, spec);
    double s0 = 0, s1 = 0, s2 = 0;
    for (const auto& r : rows) {
      const double e = r.dice - predict_dice(f, {r.x0, r.x1, r.x2, r.label});
      s0 += e;
      s1 += e * *r.x1;
      s2 += e * r.x2.value();
    }
    const double tol = 1e-9 * static_cast<double>(rows.size());
    ASSERT_LE(std::fabs(s0), tol);
    ASSERT_LE(std::fabs(s1), tol);
    ASSERT_LE(std::fabs(s2), tol);
  }
}

TEST(Property, RefitOnOwnPredictionsIsStable) {
  Rng rng(88);
  const auto spec = ModelSpec::create({Predictor::X1, Predictor::X2});
  for (int t = 0; t < 30; ++t) {
    auto rows = random_rows(rng, 50);
    const auto f = fit(rows, spec);
    for (auto& r : rows) r.dice = predict_dice(f, {r.x0, r.x1, r.x2, r.label});
    const auto g = fit(rows, spec);
    for (std::size_t k = 0; k < 3; ++k) ASSERT_NEAR(g.coefficients[k], f.coefficients[k], 1e-9);
  }
}

TEST(Property, ZeroPredictorDoesNotMoveOthers) {
  Rng rng(89);
  for (int t = 0; t < 30; ++t) {
    auto rows = random_rows(rng, 60);
    for (auto& r : rows) r.x2 = 0.0;
    const auto with = fit(rows, ModelSpec::create({Predictor::X1, Predictor::X2}));
    const auto without = fit(rows, ModelSpec::create({Predictor::X1}));
    ASSERT_TRUE(with.rank_deficient);
    ASSERT_NEAR(with.coefficients[0], without.coefficients[0], 1e-9);
    ASSERT_NEAR(with.coefficients[1], without.coefficients[1], 1e-9);
    ASSERT_NEAR(with.coefficients[2], 0.0, 1e-9);
  }
}

TEST(Property, NestedModelsNeverFitBetter) {
  Rng rng(90);
  for (int t = 0; t < 30; ++t) {
    const auto rows = random_rows(rng, 30 + rng.below(100));
    const double both = fit(rows, ModelSpec::create({Predictor::X1, Predictor::X2})).rmse;
    ASSERT_LE(both, fit(rows, ModelSpec::create({Predictor::X1})).rmse + 1e-15);
    ASSERT_LE(both, fit(rows, ModelSpec::create({Predictor::X2})).rmse + 1e-15);
  }
}

TEST(Property, SpearmanSymmetricAndRankInvariant) {
  Rng rng(91);
  for (int t = 0; t < kCases; ++t) {
    const std::size_t n = 4 + rng.below(50);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = rng.uniform(-1, 1);
      y[i] = x[i] + rng.normal(0, 0.5);
    }
    const auto a = spearman(x, y);
    ASSERT_NEAR(spearman(y, x).rho, a.rho, 1e-14);
    std::vector<double> tx(n), ty(n);
    for (std::size_t i = 0; i < n; ++i) {
      tx[i] = std::exp(3 * x[i]);
      ty[i] = y[i] * y[i] * y[i] + 2;
    }
    const auto b = spearman(tx, ty);
    ASSERT_NEAR(b.rho, a.rho, 1e-14);
    ASSERT_NEAR(b.p_value, a.p_value, 1e-12);
  }
}

TEST(Property, BootstrapNarrowsWithSampleSize) {
  // Mean width over seeded replications at n and 4n.
  auto mean_width = [](std::size_t n) {
    double total = 0;
    for (std::uint64_t rep = 0; rep < 40; ++rep) {
      Rng rng(mix_seed(92, rep));
      std::vector<double> s(n);
      for (auto& v : s) v = rng.uniform();
      BootstrapOptions opt;
      opt.n_sims = 500;
      opt.seed = rep;
      const auto ci = bootstrap_ci(s, opt);
      total += ci.upper - ci.lower;
    }
    return total / 40;
  };
  const double w25 = mean_width(25), w100 = mean_width(100), w400 = mean_width(400);
  EXPECT_LT(w100, w25);
  EXPECT_LT(w400, w100);
}

TEST(Property, MeanDiceFallsWithNoise) {
  SimulatorConfig cfg;
  cfg.alpha = 30;
  std::vector<double> mean_dice;
  for (double sigma : cfg.noise_grid) {
    double total = 0;
    for (std::uint64_t i = 0; i < 50; ++i) {
      Rng rng(mix_seed(93, i));
      const auto gt = generate_lesion_mask(cfg, rng);
      const auto a = aggregate(simulate_stack(gt, cfg, sigma, rng));
      total += dice(confusion(a.prediction, gt));
    }
    mean_dice.push_back(total / 50);
  }
  for (std::size_t k = 1; k < mean_dice.size(); ++k) {
    EXPECT_LE(mean_dice[k], mean_dice[k - 1]) << "sigma " << cfg.noise_grid[k];
  }
  EXPECT_LT(mean_dice.back(), mean_dice.front());
}

TEST(Property, ColourRampIsMonotone) {
  for (int a = 0; a < 255; ++a) {
    const auto lo = colormap(static_cast<std::uint8_t>(a));
    const auto hi = colormap(static_cast<std::uint8_t>(a + 1));
    ASSERT_LE(lo[0], hi[0]);
    ASSERT_GE(lo[2], hi[2]);
  }
  Rng rng(94);
  for (int t = 0; t < kCases; ++t) {
    const double a = rng.uniform(), b = rng.uniform();
    const UncertaintyMap map({3, 1}, {std::min(a, b), std::max(a, b), 1.0});
    const auto img = render_heatmap(map, RenderConfig{});
    ASSERT_LE(img.rgb[0], img.rgb[3]);
    ASSERT_GE(img.rgb[2], img.rgb[5]);
  }
}

TEST(Property, RenderingLeavesInputsUntouched) {
  Rng rng(95);
  const Shape shape{12, 10};
  const auto gt = oracle::random_mask(rng, shape);
  const auto pred = oracle::random_mask(rng, shape);
  const auto unc = random_map(rng, shape);
  const auto gt_copy = gt;
  const auto pred_copy = pred;
  const Grid unc_copy = unc;
  render_panel({&gt, &pred, &unc}, RenderConfig{});
  EXPECT_EQ(gt, gt_copy);
  EXPECT_EQ(pred, pred_copy);
  EXPECT_EQ(static_cast<const Grid&>(unc), unc_copy);
}
