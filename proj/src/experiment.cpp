#include "rsrm/experiment.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <stdexcept>

#include "rsrm/dataset_io.hpp"

namespace rsrm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

int derive_k_clusters(std::size_t train_size, int i_exponent) {
    if (train_size < 2) throw std::invalid_argument("derive_k_clusters: need at least 2 items");
    const double value = static_cast<double>(train_size) / std::pow(2.0, i_exponent);
    const int k = static_cast<int>(std::floor(std::sqrt(value)));
    if (k < 1) {
        std::cerr << "warning: floor(sqrt(" << train_size << "/2^" << i_exponent
                  << ")) is 0 (dataset too small for this exponent); using 1 cluster\n";
        return 1;
    }
    return k;
}

int derive_l(int k_clusters) {
    if (k_clusters < 1) throw std::invalid_argument("derive_l: k_clusters must be >= 1");
    const int l = static_cast<int>(std::floor(std::sqrt(static_cast<double>(k_clusters))));
    return l < 1 ? 1 : l;
}

ExperimentRecord run_conv_baseline(const Dataset& dataset, int k_neighbors) {
    if (k_neighbors < 1)
        throw std::invalid_argument("run_conv_baseline: k_neighbors must be >= 1");
    const auto start = Clock::now();

    ExperimentRecord rec;
    rec.dataset = dataset.name;
    rec.fingerprint = dataset_fingerprint(dataset);
    rec.config = {0, 0, 0, 0.0, k_neighbors};
    rec.predictions.reserve(dataset.test.size());

    DistanceCounter counter;
    std::size_t correct = 0;
    for (const Instance& item : dataset.test) {
        const int predicted = conv_knn_classify(dataset.train, item.features, k_neighbors, counter);
        rec.predictions.push_back(predicted);
        if (predicted == item.label) ++correct;
    }

    rec.accuracy_percent = 100.0 * static_cast<double>(correct) /
                           static_cast<double>(dataset.test.size());
    rec.distance_computations = counter.count;
    rec.centroid_component = 0;
    rec.ref_set_component = counter.count;
    rec.wall_seconds = seconds_since(start);
    return rec;
}

BestKResult find_best_k(const Dataset& dataset, int k_max) {
    if (k_max < 1) throw std::invalid_argument("find_best_k: k_max must be >= 1");

    const int k_deep = static_cast<int>(
        std::min<std::size_t>(k_max, dataset.train.size()));
    std::vector<std::size_t> correct(k_max, 0);

    DistanceCounter counter;
    for (const Instance& item : dataset.test) {
        const NeighborList neighbors =
            find_k_nearest(dataset.train, item.features, k_deep, counter);
        // The top-k prefix of a deeper neighbor list equals the k-NN result,
        // so one scan serves every k in the sweep.
        for (int k = 1; k <= k_max; ++k) {
            const std::size_t take = std::min<std::size_t>(k, neighbors.entries.size());
            const int predicted =
                vote(std::span<const Neighbor>(neighbors.entries.data(), take), dataset.train);
            if (predicted == item.label) ++correct[k - 1];
        }
    }

    BestKResult result;
    result.accuracy_by_k.resize(k_max);
    for (int k = 1; k <= k_max; ++k) {
        result.accuracy_by_k[k - 1] = 100.0 * static_cast<double>(correct[k - 1]) /
                                      static_cast<double>(dataset.test.size());
    }
    result.best_k = 1;
    result.accuracy_percent = result.accuracy_by_k[0];
    for (int k = 2; k <= k_max; ++k) {
        if (result.accuracy_by_k[k - 1] > result.accuracy_percent) {
            result.accuracy_percent = result.accuracy_by_k[k - 1];
            result.best_k = k;
        }
    }
    return result;
}

std::vector<ExperimentRecord> run_rsrm_grid(const Dataset& dataset, const GridOptions& options) {
    if (options.k_neighbors < 1)
        throw std::invalid_argument("run_rsrm_grid: k_neighbors must be >= 1");
    if (options.i_range.empty() || options.d_set.empty())
        throw std::invalid_argument("run_rsrm_grid: empty parameter range");

    const std::string fingerprint = dataset_fingerprint(dataset);
    const std::size_t n_test = dataset.test.size();

    // Clustering depends only on the cluster count; share it across D values
    // (and across exponents that derive the same count).
    std::map<int, std::shared_ptr<const Clustering>> clusterings;
    std::vector<ExperimentRecord> records;
    records.reserve(options.i_range.size() * options.d_set.size());

    for (const int i : options.i_range) {
        const int k_clusters = derive_k_clusters(dataset.train.size(), i);
        const int l_clusters = derive_l(k_clusters);
        auto it = clusterings.find(k_clusters);
        if (it == clusterings.end()) {
            auto clustering = std::make_shared<const Clustering>(
                cluster_train_set(dataset.train, k_clusters, options.max_iterations));
            if (clustering->capped) {
                std::cerr << "warning: " << dataset.name << " k=" << k_clusters
                          << " clustering stopped at the iteration cap ("
                          << options.max_iterations << ") before converging\n";
            }
            it = clusterings.emplace(k_clusters, std::move(clustering)).first;
        }
        const std::shared_ptr<const Clustering>& clustering = it->second;

        for (const double d : options.d_set) {
            const auto start = Clock::now();
            const RsrmModel model = build_model(clustering, dataset.train, d);
            if (model.zero_avg_dist_clusters > 0) {
                std::cerr << "note: " << dataset.name << " k=" << k_clusters << " D=" << d
                          << ": " << model.zero_avg_dist_clusters
                          << " cluster(s) have zero average distance; their core test only"
                             " admits queries exactly at the centroid\n";
            }

            ExperimentRecord rec;
            rec.dataset = dataset.name;
            rec.fingerprint = fingerprint;
            rec.config = {i, k_clusters, l_clusters, d, options.k_neighbors};
            rec.convergence_capped = clustering->capped;
            rec.predictions.reserve(n_test);

            DistanceCounter counter;
            std::uint64_t centroid_total = 0;
            std::uint64_t ref_set_total = 0;
            std::size_t correct = 0;
            std::size_t small_ref_sets = 0;
            for (const Instance& item : dataset.test) {
                const auto [predicted, trace] =
                    rsrm_classify(model, item.features, options.k_neighbors, l_clusters, counter);
                rec.predictions.push_back(predicted);
                centroid_total += trace.centroid_distances;
                ref_set_total += trace.ref_set_distances;
                if (trace.ref_set_size < options.k_neighbors) ++small_ref_sets;
                if (predicted == item.label) ++correct;
            }
            if (small_ref_sets > 0) {
                std::cerr << "note: " << dataset.name << " i=" << i << " D=" << d << ": "
                          << small_ref_sets << " of " << n_test
                          << " queries had a reference set smaller than k="
                          << options.k_neighbors << "; voted over all members\n";
            }

            rec.accuracy_percent =
                100.0 * static_cast<double>(correct) / static_cast<double>(n_test);
            rec.centroid_component = centroid_total;
            rec.ref_set_component = ref_set_total;
            rec.distance_computations = counter.count;
            rec.wall_seconds = seconds_since(start);
            records.push_back(std::move(rec));
        }
    }
    return records;
}

}  // namespace rsrm
