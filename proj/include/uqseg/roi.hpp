#pragma once

#include <optional>
#include <string>

#include "uqseg/core.hpp"

namespace uqseg {

enum class Normalization {
  RegionMean,     // divide by the region's pixel count
  FullImageMean,  // divide by the image's pixel count
};

std::string_view to_string(Normalization n);  // "region" / "full"
std::optional<Normalization> parse_normalization(std::string_view text);

/// Lesion / non-lesion / overall uncertainty for one image.
/// x1 is undefined for an empty lesion; x2 when the lesion covers every pixel
/// (only under RegionMean; FullImageMean always has a denominator).
struct RegionUncertaintyRecord {
  std::string image_id;
  double x0_overall = 0;
  std::optional<double> x1_lesion;
  std::optional<double> x2_nonlesion;
  std::size_t lesion_pixel_count = 0;
  Normalization normalization = Normalization::RegionMean;
};

/// Hadamard product of the map with a region mask.
UncertaintyMap masked_uncertainty(const UncertaintyMap& map, const BinaryMask& region);

double masked_sum(const UncertaintyMap& map, const BinaryMask& region);

std::optional<double> region_mean(const UncertaintyMap& map, const BinaryMask& region,
                                  Normalization normalization = Normalization::RegionMean);

RegionUncertaintyRecord decompose(const UncertaintyMap& map, const BinaryMask& gt_lesion,
                                  Normalization normalization = Normalization::RegionMean,
                                  std::string image_id = {});

}  // namespace uqseg
