#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uqseg/core.hpp"

namespace uqseg {

struct ConfusionCounts {
  std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;

  std::uint64_t total() const noexcept { return tp + fp + fn + tn; }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

struct MetricsRecord {
  std::string image_id;
  double dice = 0;
  std::optional<double> tpr;
  std::optional<double> fpr;
  std::optional<double> auroc;
  ConfusionCounts counts;
};

ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& gt);

/// 2tp / (2tp + fp + fn); 1 when both masks are empty.
double dice(const ConfusionCounts& c);

struct Rates {
  std::optional<double> tpr;
  std::optional<double> fpr;
};
Rates tpr_fpr(const ConfusionCounts& c);

/// Mann-Whitney AUROC with midranks; undefined for a single-class gt.
std::optional<double> auroc(const Grid& scores, const BinaryMask& gt);
std::optional<double> auroc(std::span<const double> scores, std::span<const std::uint8_t> labels);

MetricsRecord evaluate(const Grid& mean, const BinaryMask& pred, const BinaryMask& gt, std::string image_id = {});

/// Median; mean of the two middle values for even counts. Throws EmptyInput.
double median(std::vector<double> values);

struct MetricSummary {
  std::optional<double> dice, tpr, fpr, auroc;
  std::size_t excluded_tpr = 0, excluded_fpr = 0, excluded_auroc = 0;
};

/// Per-metric median over the defined entries. Throws EmptyInput.
MetricSummary summarize(std::span<const MetricsRecord> records);

}  // namespace uqseg
