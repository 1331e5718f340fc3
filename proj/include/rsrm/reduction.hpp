#pragma once

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rsrm/kmeans.hpp"
#include "rsrm/knn.hpp"

namespace rsrm {

struct ClusterPartition {
    int cluster_ordinal = 0;
    double avg_dist = 0.0;            // mean member-to-centroid distance
    std::vector<int> core;            // distance <= D * avg_dist, ascending
    std::vector<int> peripheral;      // the rest, ascending
};

// A converged clustering enriched with the per-cluster average-distance split.
// `train` must outlive the model; a singleton cluster converges to
// avg_dist = 0, which makes its core test "distance <= 0" — such clusters are
// counted in zero_avg_dist_clusters.
struct RsrmModel {
    std::shared_ptr<const Clustering> clustering;
    std::vector<ClusterPartition> partitions;
    double threshold_d = 1.0;
    std::span<const Instance> train;
    int zero_avg_dist_clusters = 0;

    int k() const { return clustering->k(); }
};

// Per-query cost audit: counted distances = centroid_distances + ref_set_distances.
struct QueryTrace {
    int nearest_cluster = -1;
    bool inside_core = false;
    int ref_set_size = 0;
    std::uint64_t centroid_distances = 0;  // == k()
    std::uint64_t ref_set_distances = 0;   // == ref_set_size
};

/// Splits every cluster at D times its average member-to-centroid distance.
/// Preprocessing: uses the uncounted metric path.
RsrmModel build_model(std::shared_ptr<const Clustering> clustering,
                      std::span<const Instance> train, double threshold_d);
RsrmModel build_model(Clustering clustering, std::span<const Instance> train,
                      double threshold_d);

/// Ranks clusters by centroid distance (counter +k()). Inside the nearest
/// cluster's core radius the reference set is that cluster's full member
/// list; otherwise it is the nearest cluster's full member list plus the
/// peripheral members of the next l_clusters-1 ranked clusters. The returned
/// training indices are ascending; the distance to the nearest cluster is
/// reused from the ranking, never recomputed.
std::pair<std::vector<int>, QueryTrace> assemble_reference_set(const RsrmModel& model,
                                                               std::span<const double> x,
                                                               int l_clusters,
                                                               DistanceCounter& counter);

/// assemble_reference_set followed by k-NN over the reference set; per query
/// the counter advances by exactly k() + reference set size.
std::pair<int, QueryTrace> rsrm_classify(const RsrmModel& model, std::span<const double> x,
                                         int k_neighbors, int l_clusters,
                                         DistanceCounter& counter);

/// Versioned flat-text model file; numeric fields round-trip exactly.
void save_model(const RsrmModel& model, const std::string& path);
RsrmModel load_model(const std::string& path, std::span<const Instance> train);

}  // namespace rsrm
