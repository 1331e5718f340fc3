#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rsrm/types.hpp"

namespace rsrm {

struct LabelColumn {
    enum class Kind { First, Last, Index };
    Kind kind = Kind::Last;
    std::size_t index = 0;  // used when kind == Index
};

struct RemoteFile {
    std::string url;
    std::string file;       // target filename under the data directory
    std::string sha256;     // empty = not pinned; fetch prints the computed digest
    bool z_compressed = false;
};

struct DatasetSpec {
    std::string name;
    std::string train_file;
    std::string test_file;  // empty => split_train applies to train_file
    LabelColumn label_column;
    char delimiter = ',';   // ' ' means any run of whitespace
    std::optional<std::size_t> expected_train;
    std::optional<std::size_t> expected_test;
    std::optional<std::size_t> split_train;  // single file: first N rows train, rest test
    std::vector<RemoteFile> remotes;
};

/// Parses a JSON spec file (see data/specs/).
DatasetSpec load_spec(const std::string& path);

/// Reads the delimited files named by the spec from data_dir. Attributes are
/// parsed as doubles exactly as stored; labels are interned to dense ids in
/// train-file order; instance indices follow row order. Ragged rows,
/// non-numeric or non-finite attribute cells, test labels unseen in train,
/// and expected-size mismatches are distinct hard errors.
Dataset load_dataset(const DatasetSpec& spec, const std::string& data_dir);

/// SHA-256 over a canonical serialization of sizes, attribute count, class
/// names, and every value; stable across runs and platforms.
std::string dataset_fingerprint(const Dataset& dataset);

/// Canonical form: comma-delimited, label name in the last column, doubles in
/// shortest round-trip notation. Reloading yields an equal dataset.
void export_canonical_csv(const Dataset& dataset, const std::string& train_path,
                          const std::string& test_path);

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::string& path);

}  // namespace rsrm
