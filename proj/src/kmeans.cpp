#include "rsrm/kmeans.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace rsrm {

Clustering cluster_train_set(std::span<const Instance> train, int k_clusters,
                             int max_iterations) {
    const int n = static_cast<int>(train.size());
    if (k_clusters < 1) throw std::invalid_argument("cluster_train_set: k_clusters must be >= 1");
    if (k_clusters > n) {
        throw std::invalid_argument("cluster_train_set: k_clusters (" +
                                    std::to_string(k_clusters) +
                                    ") exceeds training set size (" + std::to_string(n) + ")");
    }
    if (max_iterations < 1)
        throw std::invalid_argument("cluster_train_set: max_iterations must be >= 1");

    const std::size_t dim = train[0].features.size();
    std::vector<FeatureVector> centroids(k_clusters);
    for (int c = 0; c < k_clusters; ++c) centroids[c] = train[c].features;

    std::vector<int> assign(n, -1);
    int sweeps = 0;
    bool capped = false;

    while (true) {
        bool moved = false;
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (int c = 0; c < k_clusters; ++c) {
                const double d = euclidean_distance(train[i].features, centroids[c]);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (best != assign[i]) {
                assign[i] = best;
                moved = true;
            }
        }
        ++sweeps;

        // Reseed clusters the sweep emptied: the donor item is the one
        // farthest from its assigned centroid, drawn from a cluster keeping
        // at least two members; ties to the lowest item index.
        std::vector<int> count(k_clusters, 0);
        for (int i = 0; i < n; ++i) ++count[assign[i]];
        for (int c = 0; c < k_clusters; ++c) {
            if (count[c] != 0) continue;
            int far = -1;
            double far_d = -1.0;
            for (int i = 0; i < n; ++i) {
                if (count[assign[i]] < 2) continue;
                const double d = euclidean_distance(train[i].features, centroids[assign[i]]);
                if (d > far_d) {
                    far_d = d;
                    far = i;
                }
            }
            --count[assign[far]];
            assign[far] = c;
            ++count[c];
            centroids[c] = train[far].features;
            moved = true;
        }

        // Batch mean update, once per sweep; members summed in ascending index
        // order so results are reproducible bit for bit.
        std::vector<FeatureVector> sums(k_clusters, FeatureVector(dim, 0.0));
        std::fill(count.begin(), count.end(), 0);
        for (int i = 0; i < n; ++i) {
            const int c = assign[i];
            for (std::size_t a = 0; a < dim; ++a) sums[c][a] += train[i].features[a];
            ++count[c];
        }
        for (int c = 0; c < k_clusters; ++c) {
            for (std::size_t a = 0; a < dim; ++a) sums[c][a] /= count[c];
            centroids[c] = std::move(sums[c]);
        }

        if (!moved) break;
        if (sweeps >= max_iterations) {
            capped = true;
            break;
        }
    }

    Clustering out;
    out.clusters.resize(k_clusters);
    for (int c = 0; c < k_clusters; ++c) out.clusters[c].centroid = std::move(centroids[c]);
    for (int i = 0; i < n; ++i) out.clusters[assign[i]].members.push_back(i);
    out.iterations = sweeps;
    out.capped = capped;
    return out;
}

int nearest_centroid(const Clustering& clustering, std::span<const double> x,
                     DistanceCounter* counter) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int c = 0; c < clustering.k(); ++c) {
        const double d = counter ? counted_distance(*counter, clustering.clusters[c].centroid, x)
                                 : euclidean_distance(clustering.clusters[c].centroid, x);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

std::vector<RankedCluster> rank_clusters(const Clustering& clustering,
                                         std::span<const double> x, int l_clusters,
                                         DistanceCounter& counter) {
    if (l_clusters < 1) throw std::invalid_argument("rank_clusters: l_clusters must be >= 1");
    std::vector<RankedCluster> ranked;
    ranked.reserve(clustering.k());
    for (int c = 0; c < clustering.k(); ++c) {
        ranked.push_back({c, counted_distance(counter, clustering.clusters[c].centroid, x)});
    }
    std::sort(ranked.begin(), ranked.end(), [](const RankedCluster& a, const RankedCluster& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        return a.ordinal < b.ordinal;
    });
    const int l = std::min(l_clusters, clustering.k());
    ranked.resize(l);
    return ranked;
}

}  // namespace rsrm
