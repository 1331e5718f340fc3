#include "rsrm/dataset_io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

namespace rsrm {

namespace {

namespace fs = std::filesystem;

std::vector<std::string_view> split_row(std::string_view line, char delimiter) {
    std::vector<std::string_view> cells;
    if (delimiter == ' ') {
        // Any run of whitespace separates cells; leading/trailing runs ignored.
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
            if (i >= line.size()) break;
            std::size_t j = i;
            while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
            cells.push_back(line.substr(i, j - i));
            i = j;
        }
        return cells;
    }
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(delimiter, start);
        std::string_view cell = pos == std::string_view::npos ? line.substr(start)
                                                              : line.substr(start, pos - start);
        while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t'))
            cell.remove_prefix(1);
        while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t'))
            cell.remove_suffix(1);
        cells.push_back(cell);
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return cells;
}

struct RawRow {
    std::vector<double> values;
    std::string label;
};

std::vector<RawRow> read_rows(const std::string& path, const DatasetSpec& spec) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_dataset: cannot open '" + path + "'");

    std::vector<RawRow> rows;
    std::string line;
    std::size_t line_no = 0;
    std::size_t arity = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        const auto cells = split_row(line, spec.delimiter);
        if (cells.empty()) continue;
        if (arity == 0) {
            arity = cells.size();
            if (arity < 2)
                throw std::runtime_error("load_dataset: '" + path +
                                         "' rows need at least one attribute and a label");
        } else if (cells.size() != arity) {
            throw std::runtime_error("load_dataset: ragged row at " + path + ":" +
                                     std::to_string(line_no) + " (" +
                                     std::to_string(cells.size()) + " cells, expected " +
                                     std::to_string(arity) + ")");
        }

        std::size_t label_at = 0;
        switch (spec.label_column.kind) {
            case LabelColumn::Kind::First: label_at = 0; break;
            case LabelColumn::Kind::Last: label_at = arity - 1; break;
            case LabelColumn::Kind::Index: label_at = spec.label_column.index; break;
        }
        if (label_at >= arity)
            throw std::runtime_error("load_dataset: label column " + std::to_string(label_at) +
                                     " out of range for '" + path + "'");

        RawRow row;
        row.values.reserve(arity - 1);
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c == label_at) {
                row.label.assign(cells[c]);
                continue;
            }
            double v = 0.0;
            const auto res = std::from_chars(cells[c].data(), cells[c].data() + cells[c].size(), v);
            if (res.ec != std::errc{} || res.ptr != cells[c].data() + cells[c].size()) {
                throw std::runtime_error("load_dataset: non-numeric attribute cell '" +
                                         std::string(cells[c]) + "' at " + path + ":" +
                                         std::to_string(line_no));
            }
            if (!std::isfinite(v)) {
                throw std::runtime_error("load_dataset: non-finite attribute value at " + path +
                                         ":" + std::to_string(line_no));
            }
            row.values.push_back(v);
        }
        if (row.label.empty())
            throw std::runtime_error("load_dataset: empty label at " + path + ":" +
                                     std::to_string(line_no));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

DatasetSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_spec: cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("load_spec: '" + path + "' is not valid JSON: " + e.what());
    }

    DatasetSpec spec;
    try {
        spec.name = j.at("name").get<std::string>();
        spec.train_file = j.at("train_file").get<std::string>();
        spec.test_file = j.value("test_file", std::string{});

        if (j.contains("label_column") && j["label_column"].is_number_unsigned()) {
            spec.label_column.kind = LabelColumn::Kind::Index;
            spec.label_column.index = j["label_column"].get<std::size_t>();
        } else {
            const std::string label = j.value("label_column", "last");
            if (label == "first") {
                spec.label_column.kind = LabelColumn::Kind::First;
            } else if (label == "last") {
                spec.label_column.kind = LabelColumn::Kind::Last;
            } else {
                spec.label_column.kind = LabelColumn::Kind::Index;
                std::size_t idx = 0;
                const auto res = std::from_chars(label.data(), label.data() + label.size(), idx);
                if (res.ec != std::errc{} || res.ptr != label.data() + label.size())
                    throw std::runtime_error(
                        "label_column must be 'first', 'last', or a column index");
                spec.label_column.index = idx;
            }
        }

        const std::string delim = j.value("delimiter", ",");
        if (delim.size() != 1)
            throw std::runtime_error("delimiter must be a single character");
        spec.delimiter = delim[0];

        if (j.contains("expected_train")) spec.expected_train = j["expected_train"].get<std::size_t>();
        if (j.contains("expected_test")) spec.expected_test = j["expected_test"].get<std::size_t>();
        if (j.contains("split_train")) spec.split_train = j["split_train"].get<std::size_t>();

        for (const auto& r : j.value("remotes", nlohmann::json::array())) {
            RemoteFile remote;
            remote.url = r.at("url").get<std::string>();
            remote.file = r.at("file").get<std::string>();
            remote.sha256 = r.value("sha256", std::string{});
            remote.z_compressed = r.value("z_compressed", false);
            spec.remotes.push_back(std::move(remote));
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("load_spec: '" + path + "': " + e.what());
    }

    if (spec.test_file.empty() && !spec.split_train)
        throw std::runtime_error("load_spec: '" + path +
                                 "' needs either test_file or split_train");
    return spec;
}

Dataset load_dataset(const DatasetSpec& spec, const std::string& data_dir) {
    const fs::path dir(data_dir);
    std::vector<RawRow> train_rows;
    std::vector<RawRow> test_rows;

    if (!spec.test_file.empty()) {
        train_rows = read_rows((dir / spec.train_file).string(), spec);
        test_rows = read_rows((dir / spec.test_file).string(), spec);
    } else {
        std::vector<RawRow> all = read_rows((dir / spec.train_file).string(), spec);
        const std::size_t n = *spec.split_train;
        if (all.size() <= n) {
            throw std::runtime_error("load_dataset: '" + spec.name + "' has " +
                                     std::to_string(all.size()) + " rows, cannot split at " +
                                     std::to_string(n));
        }
        train_rows.assign(std::make_move_iterator(all.begin()),
                          std::make_move_iterator(all.begin() + n));
        test_rows.assign(std::make_move_iterator(all.begin() + n),
                         std::make_move_iterator(all.end()));
    }

    if (train_rows.empty()) throw std::runtime_error("load_dataset: empty train partition");
    if (test_rows.empty()) throw std::runtime_error("load_dataset: empty test partition");

    if (spec.expected_train && train_rows.size() != *spec.expected_train) {
        throw std::runtime_error("load_dataset: '" + spec.name + "' train size " +
                                 std::to_string(train_rows.size()) + " does not match expected " +
                                 std::to_string(*spec.expected_train) +
                                 " (wrong file version?)");
    }
    if (spec.expected_test && test_rows.size() != *spec.expected_test) {
        throw std::runtime_error("load_dataset: '" + spec.name + "' test size " +
                                 std::to_string(test_rows.size()) + " does not match expected " +
                                 std::to_string(*spec.expected_test) + " (wrong file version?)");
    }

    const std::size_t num_attributes = train_rows[0].values.size();
    for (const RawRow& row : test_rows) {
        if (row.values.size() != num_attributes)
            throw std::runtime_error("load_dataset: '" + spec.name +
                                     "' test rows have a different attribute count than train");
    }

    Dataset ds;
    ds.name = spec.name;
    ds.num_attributes = num_attributes;

    std::unordered_map<std::string, int> label_ids;
    auto intern = [&](const std::string& name) {
        const auto [it, inserted] = label_ids.emplace(name, ds.class_names.size());
        if (inserted) ds.class_names.push_back(name);
        return it->second;
    };

    ds.train.reserve(train_rows.size());
    for (std::size_t i = 0; i < train_rows.size(); ++i) {
        Instance inst;
        inst.features = std::move(train_rows[i].values);
        inst.label = intern(train_rows[i].label);
        inst.index = static_cast<int>(i);
        ds.train.push_back(std::move(inst));
    }
    ds.test.reserve(test_rows.size());
    for (std::size_t i = 0; i < test_rows.size(); ++i) {
        const auto it = label_ids.find(test_rows[i].label);
        if (it == label_ids.end()) {
            throw std::runtime_error("load_dataset: '" + spec.name + "' test label '" +
                                     test_rows[i].label + "' never appears in the train partition");
        }
        Instance inst;
        inst.features = std::move(test_rows[i].values);
        inst.label = it->second;
        inst.index = static_cast<int>(i);
        ds.test.push_back(std::move(inst));
    }
    return ds;
}

namespace {

void append_double(std::string& out, double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

}  // namespace

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256_hex: digest failure");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("sha256_file: cannot open '" + path + "'");

    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx) throw std::runtime_error("sha256_file: context allocation failed");
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof buf);
        if (in.gcount() > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, digest, &len);
    EVP_MD_CTX_free(ctx);

    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

std::string dataset_fingerprint(const Dataset& dataset) {
    std::string canon;
    canon.reserve(64 * (dataset.train.size() + dataset.test.size()));
    canon += "n_train=" + std::to_string(dataset.train.size());
    canon += ";n_test=" + std::to_string(dataset.test.size());
    canon += ";attributes=" + std::to_string(dataset.num_attributes);
    canon += ";classes=" + std::to_string(dataset.num_classes());
    for (const std::string& name : dataset.class_names) {
        canon += ';';
        canon += name;
    }
    auto append_partition = [&](const std::vector<Instance>& part, const char* tag) {
        canon += ';';
        canon += tag;
        for (const Instance& inst : part) {
            canon += '\n';
            for (const double v : inst.features) {
                append_double(canon, v);
                canon += ',';
            }
            canon += std::to_string(inst.label);
        }
    };
    append_partition(dataset.train, "train");
    append_partition(dataset.test, "test");
    return sha256_hex(canon);
}

void export_canonical_csv(const Dataset& dataset, const std::string& train_path,
                          const std::string& test_path) {
    auto write_partition = [&](const std::vector<Instance>& part, const std::string& path) {
        std::ofstream out(path, std::ios::trunc);
        if (!out) throw std::runtime_error("export_canonical_csv: cannot open '" + path + "'");
        std::string line;
        for (const Instance& inst : part) {
            line.clear();
            for (const double v : inst.features) {
                append_double(line, v);
                line += ',';
            }
            line += dataset.class_names[inst.label];
            line += '\n';
            out << line;
        }
        if (!out) throw std::runtime_error("export_canonical_csv: write to '" + path + "' failed");
    };
    write_partition(dataset.train, train_path);
    write_partition(dataset.test, test_path);
}

}  // namespace rsrm
