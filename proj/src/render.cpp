#include "uqseg/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <spdlog/spdlog.h>

#include "uqseg/roi.hpp"

namespace uqseg {
namespace {

constexpr Rgb kSeparator = {128, 128, 128};
constexpr Rgb kWhite = {255, 255, 255};
constexpr Rgb kBlack = {0, 0, 0};

constexpr std::size_t kBarHeight = 8;
constexpr std::size_t kGlyphW = 3, kGlyphH = 5;

// 3x5 glyphs, one row per byte, bit 2 = leftmost column.
constexpr std::uint8_t kDigits[10][5] = {
    {7, 5, 5, 5, 7}, {2, 6, 2, 2, 7}, {7, 1, 7, 4, 7}, {7, 1, 7, 1, 7}, {5, 5, 7, 1, 1},
    {7, 4, 7, 1, 7}, {7, 4, 7, 5, 7}, {7, 1, 1, 1, 1}, {7, 5, 7, 5, 7}, {7, 5, 7, 1, 7},
};
constexpr std::uint8_t kDot[5] = {0, 0, 0, 0, 2};

RgbImage blank(std::size_t w, std::size_t h, Rgb fill) {
  RgbImage img{w, h, std::vector<std::uint8_t>(w * h * 3)};
  for (std::size_t i = 0; i < w * h; ++i) std::copy(fill.begin(), fill.end(), img.rgb.begin() + 3 * i);
  return img;
}

void set_pixel(RgbImage& img, std::size_t x, std::size_t y, Rgb c) {
  if (x >= img.width || y >= img.height) return;
  std::copy(c.begin(), c.end(), img.rgb.begin() + 3 * (y * img.width + x));
}

void blit(RgbImage& dst, const RgbImage& src, std::size_t x0, std::size_t y0) {
  for (std::size_t y = 0; y < src.height; ++y) {
    for (std::size_t x = 0; x < src.width; ++x) {
      const auto* p = &src.rgb[3 * (y * src.width + x)];
      set_pixel(dst, x0 + x, y0 + y, {p[0], p[1], p[2]});
    }
  }
}

void draw_text(RgbImage& img, const std::string& text, std::size_t x0, std::size_t y0) {
  std::size_t x = x0;
  for (char ch : text) {
    const std::uint8_t* glyph = ch == '.' ? kDot : (ch >= '0' && ch <= '9') ? kDigits[ch - '0'] : nullptr;
    if (glyph) {
      for (std::size_t row = 0; row < kGlyphH; ++row) {
        for (std::size_t col = 0; col < kGlyphW; ++col) {
          if (glyph[row] & (4u >> col)) set_pixel(img, x + col, y0 + row, kBlack);
        }
      }
    }
    x += kGlyphW + 1;
  }
}

std::string label_for(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

bool is_heatmap(Panel p) { return p == Panel::UncOverall || p == Panel::UncLesion || p == Panel::UncNonLesion; }

RgbImage render_with_max(const PanelBundle& bundle, Panel panel, double max_value, std::size_t upscale) {
  auto need = [&](const void* ptr, const char* what) {
    if (!ptr) throw Error(ErrorCode::MissingPanel, std::string(to_string(panel)) + " needs " + what);
  };
  switch (panel) {
    case Panel::GT:
      need(bundle.gt, "a ground-truth mask");
      return render_mask(*bundle.gt, upscale);
    case Panel::Pred:
      need(bundle.prediction, "a predicted mask");
      return render_mask(*bundle.prediction, upscale);
    case Panel::UncOverall:
      need(bundle.uncertainty, "an uncertainty map");
      return render_heatmap(*bundle.uncertainty, max_value, upscale);
    case Panel::UncLesion:
    case Panel::UncNonLesion: {
      need(bundle.uncertainty, "an uncertainty map");
      need(bundle.gt, "a ground-truth mask");
      const BinaryMask region = panel == Panel::UncLesion ? *bundle.gt : complement(*bundle.gt);
      return render_heatmap(masked_uncertainty(*bundle.uncertainty, region), max_value, upscale);
    }
  }
  throw Error(ErrorCode::MissingPanel, "unknown panel");
}

double bundle_scale(const PanelBundle& bundle, const RenderConfig& cfg) {
  if (cfg.scale == RenderConfig::Scale::Fixed) return cfg.fixed_max;
  return bundle.uncertainty ? scale_max(*bundle.uncertainty, cfg) : 0.0;
}

}  // namespace

std::string_view to_string(Panel panel) {
  switch (panel) {
    case Panel::GT: return "gt";
    case Panel::Pred: return "pred";
    case Panel::UncOverall: return "unc";
    case Panel::UncLesion: return "unc_lesion";
    case Panel::UncNonLesion: return "unc_nonlesion";
  }
  return "?";
}

std::optional<Panel> parse_panel(std::string_view text) {
  for (auto p : {Panel::GT, Panel::Pred, Panel::UncOverall, Panel::UncLesion, Panel::UncNonLesion}) {
    if (to_string(p) == text) return p;
  }
  return std::nullopt;
}

void RenderConfig::validate() const {
  if (scale == Scale::Fixed && !(fixed_max > 0.0)) throw Error(ErrorCode::InvalidConfig, "fixed scale must be > 0");
  if (panel_order.empty()) throw Error(ErrorCode::InvalidConfig, "panel order is empty");
  if (upscale < 1) throw Error(ErrorCode::InvalidConfig, "upscale must be >= 1");
}

Rgb colormap(std::uint8_t level) {
  // Lower half blends blue into white, upper half white into red.
  if (level < 128) {
    const auto c = static_cast<std::uint8_t>(std::lround(255.0 * level / 127.5));
    return {c, c, 255};
  }
  const auto c = static_cast<std::uint8_t>(std::lround(255.0 * (255 - level) / 127.5));
  return {255, c, c};
}

double scale_max(const UncertaintyMap& map, const RenderConfig& cfg) {
  if (cfg.scale == RenderConfig::Scale::Fixed) return cfg.fixed_max;
  const auto v = map.values();
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

RgbImage render_heatmap(const UncertaintyMap& map, double max_value, std::size_t upscale) {
  RgbImage img = blank(map.width() * upscale, map.height() * upscale, kBlack);
  for (std::size_t y = 0; y < map.height(); ++y) {
    for (std::size_t x = 0; x < map.width(); ++x) {
      const double t = max_value > 0.0 ? std::clamp(map.at(x, y) / max_value, 0.0, 1.0) : 0.0;
      const Rgb c = colormap(static_cast<std::uint8_t>(std::lround(255.0 * t)));
      for (std::size_t dy = 0; dy < upscale; ++dy) {
        for (std::size_t dx = 0; dx < upscale; ++dx) set_pixel(img, x * upscale + dx, y * upscale + dy, c);
      }
    }
  }
  return img;
}

RgbImage render_heatmap(const UncertaintyMap& map, const RenderConfig& cfg) {
  cfg.validate();
  const double max_value = scale_max(map, cfg);
  if (max_value <= 0.0) spdlog::warn("render: uncertainty map is all zero; rendering the lower colour endpoint");
  return render_heatmap(map, max_value, cfg.upscale);
}

RgbImage render_mask(const BinaryMask& mask, std::size_t upscale) {
  RgbImage img = blank(mask.width() * upscale, mask.height() * upscale, kBlack);
  for (std::size_t y = 0; y < mask.height(); ++y) {
    for (std::size_t x = 0; x < mask.width(); ++x) {
      if (!mask.at(x, y)) continue;
      for (std::size_t dy = 0; dy < upscale; ++dy) {
        for (std::size_t dx = 0; dx < upscale; ++dx) set_pixel(img, x * upscale + dx, y * upscale + dy, kWhite);
      }
    }
  }
  return img;
}

RgbImage render_single(const PanelBundle& bundle, Panel panel, const RenderConfig& cfg) {
  cfg.validate();
  return render_with_max(bundle, panel, bundle_scale(bundle, cfg), cfg.upscale);
}

RgbImage render_panel(const PanelBundle& bundle, const RenderConfig& cfg) {
  cfg.validate();
  const double max_value = bundle_scale(bundle, cfg);
  std::vector<RgbImage> tiles;
  for (auto p : cfg.panel_order) tiles.push_back(render_with_max(bundle, p, max_value, cfg.upscale));
  const bool heatmaps = std::any_of(cfg.panel_order.begin(), cfg.panel_order.end(), is_heatmap);
  if (heatmaps && max_value <= 0.0) spdlog::warn("render: uncertainty scale is zero; heatmaps render all blue");

  std::size_t width = 0, tile_h = 0;
  for (const auto& t : tiles) {
    width += t.width;
    tile_h = std::max(tile_h, t.height);
  }
  width += kPanelSeparator * (tiles.size() - 1);
  const std::size_t label_h = kGlyphH + 2;
  const std::size_t height = heatmaps ? tile_h + kPanelSeparator + kBarHeight + label_h : tile_h;

  RgbImage out = blank(width, height, kSeparator);
  std::size_t x = 0;
  for (const auto& t : tiles) {
    blit(out, t, x, 0);
    x += t.width + kPanelSeparator;
  }
  if (heatmaps) {
    const std::size_t bar_y = tile_h + kPanelSeparator;
    for (std::size_t bx = 0; bx < width; ++bx) {
      const double t = width > 1 ? static_cast<double>(bx) / static_cast<double>(width - 1) : 0.0;
      const Rgb c = colormap(static_cast<std::uint8_t>(std::lround(255.0 * t)));
      for (std::size_t by = 0; by < kBarHeight; ++by) set_pixel(out, bx, bar_y + by, c);
    }
    const std::size_t text_y = bar_y + kBarHeight;
    for (std::size_t ty = 0; ty < label_h; ++ty) {
      for (std::size_t tx = 0; tx < width; ++tx) set_pixel(out, tx, text_y + ty, kWhite);
    }
    draw_text(out, label_for(0.0), 0, text_y + 1);
    const std::string hi = label_for(max_value);
    const std::size_t hi_w = hi.size() * (kGlyphW + 1) - 1;
    draw_text(out, hi, width > hi_w ? width - hi_w : 0, text_y + 1);
  }
  return out;
}

}  // namespace uqseg
