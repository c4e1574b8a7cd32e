#pragma once

#include <vector>

#include "uqseg/core.hpp"

namespace uqseg {

/// Exact squared Euclidean distance from every pixel to the nearest pixel whose
/// mask value equals `target` (0 on such pixels). Pixels with no target
/// anywhere get +infinity. Separable lower-envelope transform, O(W*H).
std::vector<double> squared_distance_to(const BinaryMask& mask, bool target);

/// Signed distance in pixels, positive inside the mask. Boundary pixels sit
/// at +/-0.5: inside pixels get (distance to nearest outside pixel) - 0.5 and
/// outside pixels get -((distance to nearest inside pixel) - 0.5).
std::vector<double> signed_distance(const BinaryMask& mask);

/// Number of 4-connected components of the foreground.
std::size_t count_components(const BinaryMask& mask);

/// Keeps only the largest 4-connected foreground component.
BinaryMask largest_component(const BinaryMask& mask);

}  // namespace uqseg
