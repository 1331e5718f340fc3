#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace oracle {

namespace {

double dist(const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace

Model preprocess(const std::vector<Point>& train_x, int k_clusters, double threshold_d,
                 int max_sweeps) {
    const int n = static_cast<int>(train_x.size());
    if (k_clusters < 1 || k_clusters > n) throw std::invalid_argument("oracle: bad k_clusters");

    Model m;
    m.threshold_d = threshold_d;
    // Use the first k items as initial means.
    for (int c = 0; c < k_clusters; ++c) m.centroids.push_back(train_x[c]);

    std::vector<int> assign(n, -1);
    while (true) {
        bool moved = false;
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (int c = 0; c < k_clusters; ++c) {
                const double d = dist(train_x[i], m.centroids[c]);
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
        ++m.sweeps;

        // A cluster emptied by the sweep is reseeded with the item farthest
        // from its assigned centroid, taken from a cluster keeping >= 2
        // members; ties go to the lowest item index.
        std::vector<int> count(k_clusters, 0);
        for (int i = 0; i < n; ++i) ++count[assign[i]];
        for (int c = 0; c < k_clusters; ++c) {
            if (count[c] != 0) continue;
            int far = -1;
            double far_d = -1.0;
            for (int i = 0; i < n; ++i) {
                if (count[assign[i]] < 2) continue;
                const double d = dist(train_x[i], m.centroids[assign[i]]);
                if (d > far_d) {
                    far_d = d;
                    far = i;
                }
            }
            --count[assign[far]];
            assign[far] = c;
            ++count[c];
            m.centroids[c] = train_x[far];
            moved = true;
        }

        // Compute the new mean for each cluster (members visited in ascending
        // index order).
        for (int c = 0; c < k_clusters; ++c) {
            Point sum(train_x[0].size(), 0.0);
            int cnt = 0;
            for (int i = 0; i < n; ++i) {
                if (assign[i] != c) continue;
                for (std::size_t a = 0; a < sum.size(); ++a) sum[a] += train_x[i][a];
                ++cnt;
            }
            for (std::size_t a = 0; a < sum.size(); ++a) sum[a] /= cnt;
            m.centroids[c] = sum;
        }

        if (!moved) break;
        if (m.sweeps >= max_sweeps) {
            m.capped = true;
            break;
        }
    }

    m.members.assign(k_clusters, {});
    for (int i = 0; i < n; ++i) m.members[assign[i]].push_back(i);

    // Average distance from the centroid, then the core/peripheral split.
    m.core.assign(k_clusters, {});
    m.peripheral.assign(k_clusters, {});
    m.avg_dist.assign(k_clusters, 0.0);
    for (int c = 0; c < k_clusters; ++c) {
        double sum = 0.0;
        for (int i : m.members[c]) sum += dist(train_x[i], m.centroids[c]);
        m.avg_dist[c] = sum / static_cast<double>(m.members[c].size());
        for (int i : m.members[c]) {
            if (dist(train_x[i], m.centroids[c]) <= threshold_d * m.avg_dist[c])
                m.core[c].push_back(i);
            else
                m.peripheral[c].push_back(i);
        }
    }
    return m;
}

QueryResult classify(const Model& model, const std::vector<Point>& train_x,
                     const std::vector<int>& train_y, const Point& x, int k_neighbors,
                     int l_clusters) {
    const int k_clusters = static_cast<int>(model.centroids.size());
    const int l = std::min(l_clusters, k_clusters);
    QueryResult r;

    // All centroid distances, sorted ascending with ties to the lower ordinal.
    std::vector<std::pair<double, int>> ranked;
    for (int c = 0; c < k_clusters; ++c) ranked.emplace_back(dist(x, model.centroids[c]), c);
    r.centroid_distances = ranked.size();
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    const int c1 = ranked[0].second;
    r.nearest_cluster = c1;

    std::set<int> ref;
    if (ranked[0].first <= model.threshold_d * model.avg_dist[c1]) {
        r.inside_core = true;
        ref.insert(model.members[c1].begin(), model.members[c1].end());
    } else {
        ref.insert(model.members[c1].begin(), model.members[c1].end());
        for (int j = 1; j < l; ++j) {
            const int cj = ranked[j].second;
            ref.insert(model.peripheral[cj].begin(), model.peripheral[cj].end());
        }
    }
    r.ref_set_size = static_cast<int>(ref.size());
    r.ref_set_distances = ref.size();

    // k-NN over the reference set: full sort by (distance, index).
    std::vector<std::pair<double, int>> cand;
    for (int i : ref) cand.emplace_back(dist(x, train_x[i]), i);
    std::sort(cand.begin(), cand.end());
    const int k_eff = std::min<int>(k_neighbors, static_cast<int>(cand.size()));

    std::map<int, int> votes;
    for (int j = 0; j < k_eff; ++j) ++votes[train_y[cand[j].second]];
    int top = 0;
    for (const auto& [label, cnt] : votes) top = std::max(top, cnt);
    std::vector<int> tied;
    for (const auto& [label, cnt] : votes)
        if (cnt == top) tied.push_back(label);
    r.predicted = tied.size() == 1 ? tied.front() : train_y[cand[0].second];
    return r;
}

std::pair<int, std::uint64_t> conv_knn(const std::vector<Point>& train_x,
                                       const std::vector<int>& train_y, const Point& x,
                                       int k_neighbors) {
    std::vector<std::pair<double, int>> cand;
    for (int i = 0; i < static_cast<int>(train_x.size()); ++i)
        cand.emplace_back(dist(x, train_x[i]), i);
    std::sort(cand.begin(), cand.end());
    const int k_eff = std::min<int>(k_neighbors, static_cast<int>(cand.size()));

    std::map<int, int> votes;
    for (int j = 0; j < k_eff; ++j) ++votes[train_y[cand[j].second]];
    int top = 0;
    for (const auto& [label, cnt] : votes) top = std::max(top, cnt);
    std::vector<int> tied;
    for (const auto& [label, cnt] : votes)
        if (cnt == top) tied.push_back(label);
    const int predicted = tied.size() == 1 ? tied.front() : train_y[cand[0].second];
    return {predicted, train_x.size()};
}

}  // namespace oracle
