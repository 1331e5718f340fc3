#pragma once

#include <span>
#include <vector>

#include "rsrm/distance.hpp"
#include "rsrm/types.hpp"

namespace rsrm {

struct Cluster {
    std::vector<int> members;  // training indices, ascending
    FeatureVector centroid;
};

struct Clustering {
    std::vector<Cluster> clusters;
    int iterations = 0;  // reassignment sweeps performed
    bool capped = false; // stopped at max_iterations with items still moving

    int k() const { return static_cast<int>(clusters.size()); }
};

/// Lloyd sweeps seeded with the feature vectors of train[0..k_clusters-1], in
/// dataset order. Each sweep reassigns every item to its nearest centroid
/// (ties to the lowest cluster ordinal) and then recomputes all means;
/// terminates when a full sweep moves nothing, or at max_iterations. A cluster
/// emptied by a sweep is reseeded with the item currently farthest from its
/// assigned centroid (taken from a cluster keeping two or more members, ties
/// to the lowest item index). Runs on the uncounted metric path.
Clustering cluster_train_set(std::span<const Instance> train, int k_clusters,
                             int max_iterations = 100);

/// Ordinal of the closest centroid, ties to the lowest ordinal. A supplied
/// counter advances by exactly k().
int nearest_centroid(const Clustering& clustering, std::span<const double> x,
                     DistanceCounter* counter = nullptr);

struct RankedCluster {
    int ordinal;
    double distance;
};

/// The min(l_clusters, k()) closest clusters by centroid distance, ascending,
/// ties to the lower ordinal. All k() centroid distances are computed before
/// sorting, so the counter advances by exactly k().
std::vector<RankedCluster> rank_clusters(const Clustering& clustering,
                                         std::span<const double> x, int l_clusters,
                                         DistanceCounter& counter);

}  // namespace rsrm
