#pragma once

#include <span>

#include "uqseg/core.hpp"

namespace uqseg {

struct AggregationConfig {
  double threshold = 0.95;       // pixel is lesion iff mean > threshold
  double percentile_high = 67.0;
  double percentile_low = 33.0;

  /// Throws InvalidConfig.
  void validate() const;
};

/// Per-pixel arithmetic mean over the MC iterations.
Grid mean_prediction(const ProbStack& stack);

/// 1 where mean > threshold, 0 where mean <= threshold.
BinaryMask threshold_prediction(const Grid& mean_grid, const AggregationConfig& cfg = {});

/// Percentile of `sorted` (ascending) by linear interpolation on index q/100*(n-1).
double percentile_sorted(std::span<const double> sorted, double q);

/// Per-pixel P_high - P_low across the iterations.
UncertaintyMap uncertainty_map(const ProbStack& stack, const AggregationConfig& cfg = {});

struct Aggregate {
  Grid mean;
  BinaryMask prediction;
  UncertaintyMap uncertainty;
};

Aggregate aggregate(const ProbStack& stack, const AggregationConfig& cfg = {});

}  // namespace uqseg
