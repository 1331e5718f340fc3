#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rsrm {

// Raw attribute vector, used exactly as stored in the source file.
using FeatureVector = std::vector<double>;

struct Instance {
    FeatureVector features;
    int label = -1;  // dense class id; names live in Dataset::class_names
    int index = -1;  // position within its train/test partition, the tie-break key
};

struct Dataset {
    std::string name;
    std::vector<Instance> train;
    std::vector<Instance> test;
    std::size_t num_attributes = 0;
    std::vector<std::string> class_names;  // id -> original textual class value

    int num_classes() const { return static_cast<int>(class_names.size()); }
};

// Tally of metric invocations during classification; the unit of all reported cost.
// Preprocessing (clustering, per-cluster statistics) bypasses it.
struct DistanceCounter {
    std::uint64_t count = 0;
};

}  // namespace rsrm
