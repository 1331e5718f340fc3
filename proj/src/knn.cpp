#include "rsrm/knn.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <stdexcept>

namespace rsrm {

namespace {

struct NeighborBefore {
    bool operator()(const Neighbor& a, const Neighbor& b) const {
        if (a.distance != b.distance) return a.distance < b.distance;
        return a.index < b.index;
    }
};

// Max-heap on (distance, index) capped at k entries; the scan itself is never
// pruned, so the counted cost stays |ref_set|.
class BoundedSelection {
public:
    explicit BoundedSelection(std::size_t k) : k_(k) {}

    void offer(int index, double distance) {
        const Neighbor cand{index, distance};
        if (heap_.size() < k_) {
            heap_.push(cand);
        } else if (NeighborBefore{}(cand, heap_.top())) {
            heap_.pop();
            heap_.push(cand);
        }
    }

    NeighborList take() {
        NeighborList out;
        out.entries.resize(heap_.size());
        for (std::size_t i = heap_.size(); i-- > 0;) {
            out.entries[i] = heap_.top();
            heap_.pop();
        }
        return out;
    }

private:
    std::size_t k_;
    std::priority_queue<Neighbor, std::vector<Neighbor>, NeighborBefore> heap_;
};

}  // namespace

NeighborList find_k_nearest(std::span<const Instance> ref_set, std::span<const double> x,
                            int k, DistanceCounter& counter) {
    if (ref_set.empty()) throw std::invalid_argument("find_k_nearest: empty reference set");
    if (k < 1) throw std::invalid_argument("find_k_nearest: k must be >= 1");
    BoundedSelection sel(std::min<std::size_t>(k, ref_set.size()));
    for (const Instance& inst : ref_set) {
        sel.offer(inst.index, counted_distance(counter, inst.features, x));
    }
    return sel.take();
}

NeighborList find_k_nearest(std::span<const Instance> train, std::span<const int> ref_indices,
                            std::span<const double> x, int k, DistanceCounter& counter) {
    if (ref_indices.empty()) throw std::invalid_argument("find_k_nearest: empty reference set");
    if (k < 1) throw std::invalid_argument("find_k_nearest: k must be >= 1");
    BoundedSelection sel(std::min<std::size_t>(k, ref_indices.size()));
    for (const int idx : ref_indices) {
        assert(idx >= 0 && static_cast<std::size_t>(idx) < train.size());
        sel.offer(idx, counted_distance(counter, train[idx].features, x));
    }
    return sel.take();
}

int vote(std::span<const Neighbor> entries, std::span<const Instance> train) {
    if (entries.empty()) throw std::invalid_argument("vote: empty neighbor list");

    // k is tiny; count label frequencies over the entries directly.
    std::vector<std::pair<int, int>> counts;  // label -> count
    for (const Neighbor& nb : entries) {
        const int label = train[nb.index].label;
        auto it = std::find_if(counts.begin(), counts.end(),
                               [label](const auto& p) { return p.first == label; });
        if (it == counts.end())
            counts.emplace_back(label, 1);
        else
            ++it->second;
    }
    int best_label = -1;
    int best_count = 0;
    bool tie = false;
    for (const auto& [label, cnt] : counts) {
        if (cnt > best_count) {
            best_count = cnt;
            best_label = label;
            tie = false;
        } else if (cnt == best_count) {
            tie = true;
        }
    }
    if (tie) return train[entries.front().index].label;
    return best_label;
}

int vote(const NeighborList& neighbors, std::span<const Instance> train) {
    return vote(std::span<const Neighbor>(neighbors.entries), train);
}

int conv_knn_classify(std::span<const Instance> train, std::span<const double> x, int k,
                      DistanceCounter& counter) {
    return vote(find_k_nearest(train, x, k, counter), train);
}

}  // namespace rsrm
