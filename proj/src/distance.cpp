#include "rsrm/distance.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rsrm {

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("euclidean_distance: dimension mismatch (" +
                                    std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()) + ")");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

double counted_distance(DistanceCounter& counter, std::span<const double> a,
                        std::span<const double> b) {
    ++counter.count;
    return euclidean_distance(a, b);
}

}  // namespace rsrm
