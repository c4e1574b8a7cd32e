#pragma once

#include <span>
#include <vector>

namespace uqseg {

/// 1-based ranks; tied values share the mean of the ranks they span.
std::vector<double> midranks(std::span<const double> values);

}  // namespace uqseg
