#include <gtest/gtest.h>

#include "uqseg/render.hpp"

using namespace uqseg;

namespace {

Rgb pixel(const RgbImage& img, std::size_t x, std::size_t y) {
  const auto* p = &img.rgb[3 * (y * img.width + x)];
  return {p[0], p[1], p[2]};
}

}  // namespace

TEST(Colormap, Endpoints) {
  EXPECT_EQ(colormap(0), (Rgb{0, 0, 255}));
  EXPECT_EQ(colormap(255), (Rgb{255, 0, 0}));
  const auto mid = colormap(128);
  EXPECT_EQ(mid[0], 255);
  EXPECT_GE(mid[1], 250);
}

TEST(Heatmap, AllZeroIsBlue) {
  const UncertaintyMap map({3, 2}, std::vector<double>(6, 0.0));
  const auto img = render_heatmap(map, RenderConfig{});
  for (std::size_t y = 0; y < 2; ++y) {
    for (std::size_t x = 0; x < 3; ++x) EXPECT_EQ(pixel(img, x, y), (Rgb{0, 0, 255}));
  }
}

TEST(Heatmap, PerImageMaxEndpoints) {
  const UncertaintyMap map({2, 1}, {0.0, 0.3});
  const auto img = render_heatmap(map, RenderConfig{});
  EXPECT_EQ(pixel(img, 0, 0), (Rgb{0, 0, 255}));
  EXPECT_EQ(pixel(img, 1, 0), (Rgb{255, 0, 0}));
}

TEST(Heatmap, FixedScaleSaturates) {
  RenderConfig cfg;
  cfg.scale = RenderConfig::Scale::Fixed;
  cfg.fixed_max = 0.1;
  const UncertaintyMap map({2, 1}, {0.05, 0.5});
  const auto img = render_heatmap(map, cfg);
  EXPECT_EQ(pixel(img, 1, 0), (Rgb{255, 0, 0}));
  EXPECT_EQ(pixel(img, 0, 0), colormap(128));
}

TEST(Heatmap, UpscaleAndDeterminism) {
  RenderConfig cfg;
  cfg.upscale = 3;
  const UncertaintyMap map({2, 2}, {0.1, 0.2, 0.3, 0.4});
  const auto a = render_heatmap(map, cfg);
  EXPECT_EQ(a.width, 6u);
  EXPECT_EQ(a.height, 6u);
  EXPECT_EQ(pixel(a, 0, 0), pixel(a, 2, 2));
  EXPECT_EQ(encode_ppm(a), encode_ppm(render_heatmap(map, cfg)));
}

TEST(Panel, TwoMaskPanelsLayout) {
  const auto gt = BinaryMask::ones({64, 64});
  const auto pred = BinaryMask::zeros({64, 64});
  RenderConfig cfg;
  cfg.panel_order = {Panel::GT, Panel::Pred};
  const auto img = render_panel({&gt, &pred, nullptr}, cfg);
  EXPECT_EQ(img.width, 130u);
  EXPECT_EQ(img.height, 64u);
  EXPECT_EQ(pixel(img, 0, 0), (Rgb{255, 255, 255}));
  EXPECT_EQ(pixel(img, 64, 0), (Rgb{128, 128, 128}));
  EXPECT_EQ(pixel(img, 66, 0), (Rgb{0, 0, 0}));
}

TEST(Panel, FivePanelsWithColorbar) {
  std::vector<std::uint8_t> bits(64 * 64, 0);
  for (std::size_t y = 20; y < 40; ++y) {
    for (std::size_t x = 20; x < 40; ++x) bits[y * 64 + x] = 1;
  }
  const BinaryMask gt({64, 64}, bits);
  std::vector<double> v(64 * 64);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i % 64) / 640.0;
  const UncertaintyMap unc({64, 64}, v);
  const auto img = render_panel({&gt, &gt, &unc}, RenderConfig{});
  EXPECT_EQ(img.width, 5u * 64 + 4 * 2);
  EXPECT_GT(img.height, 64u);
  // Colour bar runs blue to red under the panels.
  const std::size_t bar_y = 64 + kPanelSeparator;
  EXPECT_EQ(pixel(img, 0, bar_y), (Rgb{0, 0, 255}));
  EXPECT_EQ(pixel(img, img.width - 1, bar_y), (Rgb{255, 0, 0}));
  // Lesion panel is zero outside the lesion.
  const std::size_t lesion_x0 = 3 * (64 + 2);
  EXPECT_EQ(pixel(img, lesion_x0 + 5, 5), (Rgb{0, 0, 255}));
  EXPECT_EQ(encode_ppm(img), encode_ppm(render_panel({&gt, &gt, &unc}, RenderConfig{})));
}

TEST(Panel, MissingInputs) {
  const auto gt = BinaryMask::ones({4, 4});
  try {
    render_panel({&gt, nullptr, nullptr}, RenderConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingPanel);
  }
  RenderConfig cfg;
  cfg.panel_order = {Panel::GT};
  EXPECT_NO_THROW(render_panel({&gt, nullptr, nullptr}, cfg));
}

TEST(RenderConfigCheck, Validation) {
  RenderConfig cfg;
  cfg.upscale = 0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.panel_order.clear();
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.scale = RenderConfig::Scale::Fixed;
  cfg.fixed_max = 0;
  EXPECT_THROW(cfg.validate(), Error);
  EXPECT_EQ(parse_panel("unc_lesion"), Panel::UncLesion);
  EXPECT_FALSE(parse_panel("bogus"));
}
