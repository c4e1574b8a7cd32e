#include <gtest/gtest.h>

#include "oracles.hpp"
#include "uqseg/roi.hpp"

using namespace uqseg;

namespace {

UncertaintyMap random_map(Rng& rng, Shape shape) {
  std::vector<double> v(shape.pixels());
  for (auto& x : v) x = rng.uniform();
  return {shape, std::move(v)};
}

const UncertaintyMap kSquare({2, 2}, {0.2, 0.4, 0.6, 0.8});
const BinaryMask kDiagonal({2, 2}, {1, 0, 0, 1});

}  // namespace

TEST(Masked, ElementwiseProduct) {
  const auto m = masked_uncertainty(kSquare, kDiagonal);
  EXPECT_EQ(std::vector<double>(m.values().begin(), m.values().end()), (std::vector<double>{0.2, 0, 0, 0.8}));
  EXPECT_EQ(static_cast<const Grid&>(masked_uncertainty(kSquare, BinaryMask::ones({2, 2}))),
            static_cast<const Grid&>(kSquare));
  const auto zero = masked_uncertainty(kSquare, BinaryMask::zeros({2, 2}));
  for (double v : zero.values()) EXPECT_EQ(v, 0.0);
}

TEST(Masked, ShapeMismatch) {
  EXPECT_THROW(masked_uncertainty(kSquare, BinaryMask::ones({2, 3})), Error);
}

TEST(RegionMean, Normalizations) {
  EXPECT_NEAR(*region_mean(kSquare, kDiagonal, Normalization::RegionMean), 0.5, 1e-15);
  EXPECT_NEAR(*region_mean(kSquare, kDiagonal, Normalization::FullImageMean), 0.25, 1e-15);
  EXPECT_FALSE(region_mean(kSquare, BinaryMask::zeros({2, 2})));
  EXPECT_EQ(region_mean(kSquare, BinaryMask::zeros({2, 2}), Normalization::FullImageMean), 0.0);
}

TEST(RegionMean, UniformField) {
  Rng rng(31);
  for (int t = 0; t < 20; ++t) {
    const double u = rng.uniform();
    const UncertaintyMap map({5, 4}, std::vector<double>(20, u));
    auto region = oracle::random_mask(rng, {5, 4});
    if (region.count() == 0) continue;
    EXPECT_NEAR(*region_mean(map, region), u, 1e-15);
  }
}

TEST(Decompose, UniformMap) {
  const UncertaintyMap map({3, 3}, std::vector<double>(9, 0.3));
  const BinaryMask gt({3, 3}, {0, 1, 0, 1, 1, 1, 0, 1, 0});
  const auto r = decompose(map, gt);
  EXPECT_NEAR(r.x0_overall, 0.3, 1e-15);
  EXPECT_NEAR(*r.x1_lesion, 0.3, 1e-15);
  EXPECT_NEAR(*r.x2_nonlesion, 0.3, 1e-15);
  EXPECT_EQ(r.lesion_pixel_count, 5u);
}

TEST(Decompose, Checkerboard) {
  const double a = 0.7, b = 0.1;
  std::vector<std::uint8_t> bits(16);
  std::vector<double> v(16);
  for (std::size_t i = 0; i < 16; ++i) {
    bits[i] = ((i % 4) + (i / 4)) % 2;
    v[i] = bits[i] ? a : b;
  }
  const auto r = decompose(UncertaintyMap({4, 4}, v), BinaryMask({4, 4}, bits));
  EXPECT_NEAR(*r.x1_lesion, a, 1e-15);
  EXPECT_NEAR(*r.x2_nonlesion, b, 1e-15);
  EXPECT_NEAR(r.x0_overall, (a + b) / 2, 1e-15);
}

TEST(Decompose, UndefinedRegions) {
  const auto empty = decompose(kSquare, BinaryMask::zeros({2, 2}));
  EXPECT_FALSE(empty.x1_lesion);
  EXPECT_TRUE(empty.x2_nonlesion);
  const auto full = decompose(kSquare, BinaryMask::ones({2, 2}));
  EXPECT_TRUE(full.x1_lesion);
  EXPECT_FALSE(full.x2_nonlesion);
  const auto full_image = decompose(kSquare, BinaryMask::ones({2, 2}), Normalization::FullImageMean);
  EXPECT_EQ(full_image.x2_nonlesion, 0.0);
}

TEST(Decompose, X0IsWeightedCombination) {
  Rng rng(32);
  for (int t = 0; t < 200; ++t) {
    const Shape shape{1 + rng.below(10), 1 + rng.below(10)};
    const auto map = random_map(rng, shape);
    const auto gt = oracle::random_mask(rng, shape, rng.uniform());
    const auto r = decompose(map, gt);
    const double n = static_cast<double>(shape.pixels());
    const double l = static_cast<double>(r.lesion_pixel_count);
    if (r.x1_lesion && r.x2_nonlesion) {
      EXPECT_NEAR(r.x0_overall, (l * *r.x1_lesion + (n - l) * *r.x2_nonlesion) / n, 1e-12);
      EXPECT_GE(r.x0_overall, std::min(*r.x1_lesion, *r.x2_nonlesion) - 1e-15);
      EXPECT_LE(r.x0_overall, std::max(*r.x1_lesion, *r.x2_nonlesion) + 1e-15);
    }
    const auto f = decompose(map, gt, Normalization::FullImageMean);
    EXPECT_NEAR(f.x0_overall, *f.x1_lesion + *f.x2_nonlesion, 1e-12);
  }
}

TEST(Decompose, MaskedSumsPartitionTotal) {
  Rng rng(33);
  for (int t = 0; t < 200; ++t) {
    const Shape shape{1 + rng.below(10), 1 + rng.below(10)};
    std::vector<double> v(shape.pixels());
    for (auto& x : v) x = static_cast<double>(rng.below(1u << 20)) * 0x1.0p-20;  // dyadic: sums are exact
    const UncertaintyMap map(shape, v);
    const auto gt = oracle::random_mask(rng, shape);
    EXPECT_EQ(masked_sum(map, gt) + masked_sum(map, complement(gt)), masked_sum(map, BinaryMask::ones(shape)));
  }
}

TEST(Normalization, Names) {
  EXPECT_EQ(parse_normalization("region"), Normalization::RegionMean);
  EXPECT_EQ(parse_normalization("full"), Normalization::FullImageMean);
  EXPECT_FALSE(parse_normalization("other"));
}
