#include "uqseg/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace uqseg {

void AggregationConfig::validate() const {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "threshold must lie in (0,1)");
  }
  if (!(percentile_low >= 0.0 && percentile_low < percentile_high && percentile_high <= 100.0)) {
    throw Error(ErrorCode::InvalidConfig, "need 0 <= percentile_low < percentile_high <= 100");
  }
}

Grid mean_prediction(const ProbStack& stack) {
  const std::size_t n = stack.shape().pixels();
  std::vector<double> sum(n, 0.0);
  for (std::size_t j = 0; j < stack.alpha(); ++j) {
    const auto plane = stack.plane(j);
    for (std::size_t p = 0; p < n; ++p) sum[p] += plane[p];
  }
  const double inv = static_cast<double>(stack.alpha());
  for (auto& s : sum) s /= inv;
  return Grid(stack.shape(), std::move(sum));
}

BinaryMask threshold_prediction(const Grid& mean_grid, const AggregationConfig& cfg) {
  std::vector<std::uint8_t> bits(mean_grid.values().size());
  for (std::size_t p = 0; p < bits.size(); ++p) bits[p] = mean_grid[p] > cfg.threshold ? 1 : 0;
  return BinaryMask(mean_grid.shape(), std::move(bits));
}

double percentile_sorted(std::span<const double> sorted, double q) {
  const double pos = q / 100.0 * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

UncertaintyMap uncertainty_map(const ProbStack& stack, const AggregationConfig& cfg) {
  const std::size_t n = stack.shape().pixels();
  const std::size_t alpha = stack.alpha();
  std::vector<double> spread(n, 0.0);
  std::vector<double> column(alpha);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t j = 0; j < alpha; ++j) column[j] = stack.at(j, p);
    std::sort(column.begin(), column.end());
    const double d = percentile_sorted(column, cfg.percentile_high) - percentile_sorted(column, cfg.percentile_low);
    // Interpolation rounding can leave -0 or 1+ulp on degenerate columns.
    spread[p] = std::clamp(d, 0.0, 1.0);
  }
  return UncertaintyMap(stack.shape(), std::move(spread));
}

Aggregate aggregate(const ProbStack& stack, const AggregationConfig& cfg) {
  Grid mean = mean_prediction(stack);
  BinaryMask prediction = threshold_prediction(mean, cfg);
  return {std::move(mean), std::move(prediction), uncertainty_map(stack, cfg)};
}

}  // namespace uqseg
