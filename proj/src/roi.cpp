#include "uqseg/roi.hpp"

#include <numeric>
#include <vector>

namespace uqseg {

std::string_view to_string(Normalization n) {
  return n == Normalization::RegionMean ? "region" : "full";
}

std::optional<Normalization> parse_normalization(std::string_view text) {
  if (text == "region") return Normalization::RegionMean;
  if (text == "full") return Normalization::FullImageMean;
  return std::nullopt;
}

UncertaintyMap masked_uncertainty(const UncertaintyMap& map, const BinaryMask& region) {
  require_same_shape(map.shape(), region.shape(), "masked_uncertainty");
  std::vector<double> out(map.values().size());
  for (std::size_t p = 0; p < out.size(); ++p) out[p] = region[p] ? map[p] : 0.0;
  return UncertaintyMap(map.shape(), std::move(out));
}

double masked_sum(const UncertaintyMap& map, const BinaryMask& region) {
  require_same_shape(map.shape(), region.shape(), "masked_sum");
  double sum = 0.0;
  for (std::size_t p = 0; p < map.values().size(); ++p) {
    if (region[p]) sum += map[p];
  }
  return sum;
}

std::optional<double> region_mean(const UncertaintyMap& map, const BinaryMask& region,
                                  Normalization normalization) {
  const double sum = masked_sum(map, region);
  const std::size_t denom = normalization == Normalization::RegionMean ? region.count() : map.shape().pixels();
  if (denom == 0) return std::nullopt;
  return sum / static_cast<double>(denom);
}

RegionUncertaintyRecord decompose(const UncertaintyMap& map, const BinaryMask& gt_lesion,
                                  Normalization normalization, std::string image_id) {
  require_same_shape(map.shape(), gt_lesion.shape(), "decompose");
  RegionUncertaintyRecord rec;
  rec.image_id = std::move(image_id);
  rec.normalization = normalization;
  rec.lesion_pixel_count = gt_lesion.count();
  const auto values = map.values();
  rec.x0_overall = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  rec.x1_lesion = region_mean(map, gt_lesion, normalization);
  rec.x2_nonlesion = region_mean(map, complement(gt_lesion), normalization);
  return rec;
}

}  // namespace uqseg
