#include "uqseg/metrics.hpp"

#include <algorithm>
#include <numeric>

#include <spdlog/spdlog.h>

#include "uqseg/ranks.hpp"

namespace uqseg {

std::vector<double> midranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    // positions i..j-1 hold ranks i+1..j
    const double rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

ConfusionCounts confusion(const BinaryMask& pred, const BinaryMask& gt) {
  require_same_shape(pred.shape(), gt.shape(), "confusion");
  ConfusionCounts c;
  const auto p = pred.bits();
  const auto g = gt.bits();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i]) {
      g[i] ? ++c.tp : ++c.fp;
    } else {
      g[i] ? ++c.fn : ++c.tn;
    }
  }
  return c;
}

double dice(const ConfusionCounts& c) {
  const std::uint64_t denom = 2 * c.tp + c.fp + c.fn;
  if (denom == 0) return 1.0;
  return static_cast<double>(2 * c.tp) / static_cast<double>(denom);
}

Rates tpr_fpr(const ConfusionCounts& c) {
  Rates r;
  if (c.tp + c.fn > 0) r.tpr = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  if (c.fp + c.tn > 0) r.fpr = static_cast<double>(c.fp) / static_cast<double>(c.fp + c.tn);
  return r;
}

std::optional<double> auroc(std::span<const double> scores, std::span<const std::uint8_t> labels) {
  if (scores.size() != labels.size()) throw Error(ErrorCode::ShapeMismatch, "auroc: score/label length");
  const auto ranks = midranks(scores);
  double rank_sum = 0.0;
  std::uint64_t n_pos = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i]) {
      rank_sum += ranks[i];
      ++n_pos;
    }
  }
  const std::uint64_t n_neg = labels.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) return std::nullopt;
  const double np = static_cast<double>(n_pos);
  const double u = rank_sum - np * (np + 1.0) / 2.0;
  return u / (np * static_cast<double>(n_neg));
}

std::optional<double> auroc(const Grid& scores, const BinaryMask& gt) {
  require_same_shape(scores.shape(), gt.shape(), "auroc");
  return auroc(scores.values(), gt.bits());
}

MetricsRecord evaluate(const Grid& mean, const BinaryMask& pred, const BinaryMask& gt, std::string image_id) {
  MetricsRecord rec;
  rec.image_id = std::move(image_id);
  rec.counts = confusion(pred, gt);
  rec.dice = dice(rec.counts);
  const auto rates = tpr_fpr(rec.counts);
  rec.tpr = rates.tpr;
  rec.fpr = rates.fpr;
  rec.auroc = auroc(mean, gt);
  return rec;
}

double median(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorCode::EmptyInput, "median of an empty sequence");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

MetricSummary summarize(std::span<const MetricsRecord> records) {
  if (records.empty()) throw Error(ErrorCode::EmptyInput, "no metrics records to summarize");
  MetricSummary s;
  std::vector<double> dice_v, tpr_v, fpr_v, auc_v;
  for (const auto& r : records) {
    dice_v.push_back(r.dice);
    if (r.tpr) tpr_v.push_back(*r.tpr);
    if (r.fpr) fpr_v.push_back(*r.fpr);
    if (r.auroc) auc_v.push_back(*r.auroc);
  }
  s.excluded_tpr = records.size() - tpr_v.size();
  s.excluded_fpr = records.size() - fpr_v.size();
  s.excluded_auroc = records.size() - auc_v.size();
  if (s.excluded_tpr + s.excluded_fpr + s.excluded_auroc > 0) {
    spdlog::info("summarize: excluded undefined values (tpr {}, fpr {}, auroc {})", s.excluded_tpr, s.excluded_fpr,
                 s.excluded_auroc);
  }
  s.dice = median(dice_v);
  if (!tpr_v.empty()) s.tpr = median(tpr_v);
  if (!fpr_v.empty()) s.fpr = median(fpr_v);
  if (!auc_v.empty()) s.auroc = median(auc_v);
  return s;
}

}  // namespace uqseg
