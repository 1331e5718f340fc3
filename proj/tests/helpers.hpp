#pragma once

// Shared fixtures for the test binaries only.

#include <random>
#include <string>
#include <vector>

#include "rsrm/types.hpp"

namespace testutil {

inline std::vector<rsrm::Instance> make_train(const std::vector<std::vector<double>>& points,
                                              const std::vector<int>& labels = {}) {
    std::vector<rsrm::Instance> out;
    out.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        rsrm::Instance inst;
        inst.features = points[i];
        inst.label = labels.empty() ? 0 : labels[i];
        inst.index = static_cast<int>(i);
        out.push_back(std::move(inst));
    }
    return out;
}

// Gaussian class blobs around distinct centers; labels cycle through classes
// so every prefix of the data is class-mixed.
inline std::vector<rsrm::Instance> random_blobs(std::mt19937& rng, std::size_t n,
                                                std::size_t dims, int classes) {
    std::normal_distribution<double> noise(0.0, 1.2);
    std::uniform_real_distribution<double> center(-8.0, 8.0);
    std::vector<std::vector<double>> centers(classes, std::vector<double>(dims));
    for (auto& c : centers)
        for (double& x : c) x = center(rng);

    std::vector<rsrm::Instance> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int label = static_cast<int>(i) % classes;
        rsrm::Instance inst;
        inst.label = label;
        inst.index = static_cast<int>(i);
        inst.features.resize(dims);
        for (std::size_t d = 0; d < dims; ++d)
            inst.features[d] = centers[label][d] + noise(rng);
        out.push_back(std::move(inst));
    }
    return out;
}

inline rsrm::Dataset make_dataset(std::vector<rsrm::Instance> train,
                                  std::vector<rsrm::Instance> test, int classes,
                                  const std::string& name = "synthetic") {
    rsrm::Dataset data;
    data.name = name;
    data.num_attributes = train.empty() ? 0 : train.front().features.size();
    data.train = std::move(train);
    data.test = std::move(test);
    for (int c = 0; c < classes; ++c) data.class_names.push_back(std::string(1, 'a' + c));
    // Partition-local indices, as ingestion would assign them.
    for (std::size_t i = 0; i < data.train.size(); ++i)
        data.train[i].index = static_cast<int>(i);
    for (std::size_t i = 0; i < data.test.size(); ++i)
        data.test[i].index = static_cast<int>(i);
    return data;
}

inline rsrm::Dataset random_dataset(std::mt19937& rng, std::size_t n_train, std::size_t n_test,
                                    std::size_t dims, int classes,
                                    const std::string& name = "synthetic") {
    auto all = random_blobs(rng, n_train + n_test, dims, classes);
    std::vector<rsrm::Instance> train(all.begin(), all.begin() + n_train);
    std::vector<rsrm::Instance> test(all.begin() + n_train, all.end());
    return make_dataset(std::move(train), std::move(test), classes, name);
}

}  // namespace testutil
