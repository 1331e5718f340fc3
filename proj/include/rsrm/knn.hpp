#pragma once

#include <span>
#include <vector>

#include "rsrm/distance.hpp"
#include "rsrm/types.hpp"

namespace rsrm {

struct Neighbor {
    int index;  // Instance::index within the training partition
    double distance;
};

// At most k entries, sorted ascending by (distance, index).
struct NeighborList {
    std::vector<Neighbor> entries;
};

/// Exhaustive scan: every element of ref_set costs exactly one counted
/// distance. Keeps the min(k, |ref_set|) closest in a bounded max-heap; equal
/// distances are resolved toward the lower training index. Throws on an empty
/// reference set.
NeighborList find_k_nearest(std::span<const Instance> ref_set, std::span<const double> x,
                            int k, DistanceCounter& counter);

/// Same scan over the subset of train selected by ref_indices (values are
/// Instance::index positions into train).
NeighborList find_k_nearest(std::span<const Instance> train, std::span<const int> ref_indices,
                            std::span<const double> x, int k, DistanceCounter& counter);

/// Most frequent label among the entries; when two or more labels share the
/// top frequency the single nearest neighbor's label is returned, whether or
/// not it is one of the tied labels.
int vote(std::span<const Neighbor> entries, std::span<const Instance> train);
int vote(const NeighborList& neighbors, std::span<const Instance> train);

/// vote over find_k_nearest across the whole training set: the conventional
/// classifier. Costs exactly |train| counted distances per call.
int conv_knn_classify(std::span<const Instance> train, std::span<const double> x, int k,
                      DistanceCounter& counter);

}  // namespace rsrm
