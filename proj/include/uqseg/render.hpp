#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uqseg/core.hpp"
#include "uqseg/io.hpp"

namespace uqseg {

enum class Panel { GT, Pred, UncOverall, UncLesion, UncNonLesion };

std::string_view to_string(Panel panel);  // gt, pred, unc, unc_lesion, unc_nonlesion
std::optional<Panel> parse_panel(std::string_view text);

struct RenderConfig {
  enum class Scale { PerImageMax, Fixed };
  Scale scale = Scale::PerImageMax;
  double fixed_max = 1.0;
  std::vector<Panel> panel_order = {Panel::GT, Panel::Pred, Panel::UncOverall, Panel::UncLesion,
                                    Panel::UncNonLesion};
  std::size_t upscale = 1;

  /// Throws InvalidConfig.
  void validate() const;
};

inline constexpr std::size_t kPanelSeparator = 2;

using Rgb = std::array<std::uint8_t, 3>;

/// Blue -> white -> red ramp; level 0 is pure blue, level 255 pure red.
Rgb colormap(std::uint8_t level);

/// Upper end of the colour scale for `map`. PerImageMax of an all-zero map
/// returns 0, which renders all blue.
double scale_max(const UncertaintyMap& map, const RenderConfig& cfg);

RgbImage render_heatmap(const UncertaintyMap& map, const RenderConfig& cfg);
RgbImage render_heatmap(const UncertaintyMap& map, double max_value, std::size_t upscale);
RgbImage render_mask(const BinaryMask& mask, std::size_t upscale);

/// Inputs for a panel strip; absent entries may not be requested.
struct PanelBundle {
  const BinaryMask* gt = nullptr;
  const BinaryMask* prediction = nullptr;
  const UncertaintyMap* uncertainty = nullptr;
};

/// One panel on its own, no colour bar. Throws MissingPanel.
RgbImage render_single(const PanelBundle& bundle, Panel panel, const RenderConfig& cfg);

/// Panels side by side with 2-pixel separators. When any heatmap panel is
/// present a colour bar with min/max labels is appended below. All heatmap
/// panels share one scale taken from the overall map. Throws MissingPanel.
RgbImage render_panel(const PanelBundle& bundle, const RenderConfig& cfg);

}  // namespace uqseg
