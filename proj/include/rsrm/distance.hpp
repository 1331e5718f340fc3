#pragma once

#include <span>

#include "rsrm/types.hpp"

namespace rsrm {

/// sqrt of the sum of squared differences, accumulated in attribute order.
/// Throws std::invalid_argument on dimension mismatch.
double euclidean_distance(std::span<const double> a, std::span<const double> b);

/// Same value as euclidean_distance, same summation order; advances the
/// counter by exactly one.
double counted_distance(DistanceCounter& counter, std::span<const double> a,
                        std::span<const double> b);

}  // namespace rsrm
