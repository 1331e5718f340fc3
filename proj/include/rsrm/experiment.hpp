#pragma once

#include <string>
#include <vector>

#include "rsrm/reduction.hpp"
#include "rsrm/types.hpp"

namespace rsrm {

struct GridConfig {
    int i_exponent = 0;     // 0 = not derived from the exponent grid
    int k_clusters = 0;     // 0 = baseline (no clustering)
    int l_clusters = 0;
    double threshold_d = 0.0;
    int k_neighbors = 1;
};

struct ExperimentRecord {
    std::string dataset;
    std::string fingerprint;
    GridConfig config;
    double accuracy_percent = 0.0;
    std::uint64_t distance_computations = 0;  // centroid_component + ref_set_component
    std::uint64_t centroid_component = 0;
    std::uint64_t ref_set_component = 0;
    double wall_seconds = 0.0;  // informational only, never exported
    bool convergence_capped = false;
    std::vector<int> predictions;  // per test item, dense label ids

    bool is_baseline() const { return config.k_clusters == 0; }
};

/// floor(sqrt(n / 2^i)), clamped to at least 1 (with a warning when the floor
/// is 0 — the dataset is too small for that exponent).
int derive_k_clusters(std::size_t train_size, int i_exponent);

/// floor(sqrt(k_clusters)), at least 1.
int derive_l(int k_clusters);

/// Classifies every test item over the whole training set; the cost is
/// exactly n_train * n_test counted distances.
ExperimentRecord run_conv_baseline(const Dataset& dataset, int k_neighbors);

struct BestKResult {
    int best_k = 1;
    double accuracy_percent = 0.0;
    std::vector<double> accuracy_by_k;  // accuracy_by_k[k-1] for k = 1..k_max
};

/// Sweeps k = 1..k_max and returns the smallest k attaining the maximum
/// accuracy. One shared scan per test item with a k_max-deep neighbor list;
/// per-k accuracies are identical to running the baseline at each k.
BestKResult find_best_k(const Dataset& dataset, int k_max = 25);

struct GridOptions {
    std::vector<int> i_range = {1, 2, 3, 4, 5, 6, 7, 8};
    std::vector<double> d_set = {1.0, 1.5, 2.0};
    int k_neighbors = 1;
    int max_iterations = 100;
};

/// One record per (i, D) pair. Clustering is computed once per distinct
/// k_clusters value and shared across D values; records carry exact cost
/// components (centroid_component = k_clusters * n_test always).
std::vector<ExperimentRecord> run_rsrm_grid(const Dataset& dataset, const GridOptions& options);

}  // namespace rsrm
