#include "rsrm/records.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rsrm {

namespace {

constexpr const char* kCsvHeader =
    "dataset,fingerprint,iExponent,kClusters,L,D,kNeighbors,accuracyPercent,"
    "distanceComputations,centroidComponent,refSetComponent,convergenceCapped";

std::string fmt_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string fmt_accuracy(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return cells;
}

template <typename T>
T parse_number(const std::string& tok, const char* what) {
    T v{};
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
        throw std::runtime_error(std::string("parse_records: bad ") + what + " value '" + tok +
                                 "'");
    return v;
}

}  // namespace

std::string render_records_csv(std::span<const ExperimentRecord> records) {
    std::string out{kCsvHeader};
    out += '\n';
    for (const ExperimentRecord& rec : records) {
        out += rec.dataset;
        out += ',';
        out += rec.fingerprint;
        out += ',';
        out += std::to_string(rec.config.i_exponent);
        out += ',';
        out += std::to_string(rec.config.k_clusters);
        out += ',';
        out += std::to_string(rec.config.l_clusters);
        out += ',';
        out += fmt_double(rec.config.threshold_d);
        out += ',';
        out += std::to_string(rec.config.k_neighbors);
        out += ',';
        out += fmt_accuracy(rec.accuracy_percent);
        out += ',';
        out += std::to_string(rec.distance_computations);
        out += ',';
        out += std::to_string(rec.centroid_component);
        out += ',';
        out += std::to_string(rec.ref_set_component);
        out += ',';
        out += rec.convergence_capped ? "true" : "false";
        out += '\n';
    }
    return out;
}

void export_records(std::span<const ExperimentRecord> records, const std::string& path,
                    RecordFormat format) {
    if (records.empty()) throw std::invalid_argument("export_records: no records");
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("export_records: cannot open '" + path + "'");

    if (format == RecordFormat::Csv) {
        out << render_records_csv(records);
    } else {
        for (const ExperimentRecord& rec : records) {
            nlohmann::ordered_json j;
            j["dataset"] = rec.dataset;
            j["fingerprint"] = rec.fingerprint;
            j["iExponent"] = rec.config.i_exponent;
            j["kClusters"] = rec.config.k_clusters;
            j["L"] = rec.config.l_clusters;
            j["D"] = rec.config.threshold_d;
            j["kNeighbors"] = rec.config.k_neighbors;
            j["accuracyPercent"] = std::round(rec.accuracy_percent * 1e4) / 1e4;
            j["distanceComputations"] = rec.distance_computations;
            j["centroidComponent"] = rec.centroid_component;
            j["refSetComponent"] = rec.ref_set_component;
            j["convergenceCapped"] = rec.convergence_capped;
            out << j.dump() << '\n';
        }
    }
    if (!out) throw std::runtime_error("export_records: write to '" + path + "' failed");
}

std::vector<ExperimentRecord> parse_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("parse_records: cannot open '" + path + "'");

    std::vector<ExperimentRecord> records;
    std::string line;
    bool first = true;
    bool jsonl = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        if (first) {
            jsonl = line.front() == '{';
            first = false;
            if (!jsonl) {
                if (line != kCsvHeader)
                    throw std::runtime_error("parse_records: '" + path +
                                             "' has an unexpected header");
                continue;
            }
        }

        ExperimentRecord rec;
        if (jsonl) {
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(line);
            } catch (const nlohmann::json::exception& e) {
                throw std::runtime_error("parse_records: bad JSON line in '" + path +
                                         "': " + e.what());
            }
            try {
                rec.dataset = j.at("dataset").get<std::string>();
                rec.fingerprint = j.at("fingerprint").get<std::string>();
                rec.config.i_exponent = j.at("iExponent").get<int>();
                rec.config.k_clusters = j.at("kClusters").get<int>();
                rec.config.l_clusters = j.at("L").get<int>();
                rec.config.threshold_d = j.at("D").get<double>();
                rec.config.k_neighbors = j.at("kNeighbors").get<int>();
                rec.accuracy_percent = j.at("accuracyPercent").get<double>();
                rec.distance_computations = j.at("distanceComputations").get<std::uint64_t>();
                rec.centroid_component = j.at("centroidComponent").get<std::uint64_t>();
                rec.ref_set_component = j.at("refSetComponent").get<std::uint64_t>();
                rec.convergence_capped = j.at("convergenceCapped").get<bool>();
            } catch (const nlohmann::json::exception& e) {
                throw std::runtime_error("parse_records: missing field in '" + path +
                                         "': " + e.what());
            }
        } else {
            const auto cells = split_csv_line(line);
            if (cells.size() != 12)
                throw std::runtime_error("parse_records: row with " +
                                         std::to_string(cells.size()) + " cells in '" + path +
                                         "'");
            rec.dataset = cells[0];
            rec.fingerprint = cells[1];
            rec.config.i_exponent = parse_number<int>(cells[2], "iExponent");
            rec.config.k_clusters = parse_number<int>(cells[3], "kClusters");
            rec.config.l_clusters = parse_number<int>(cells[4], "L");
            rec.config.threshold_d = parse_number<double>(cells[5], "D");
            rec.config.k_neighbors = parse_number<int>(cells[6], "kNeighbors");
            rec.accuracy_percent = parse_number<double>(cells[7], "accuracyPercent");
            rec.distance_computations = parse_number<std::uint64_t>(cells[8],
                                                                    "distanceComputations");
            rec.centroid_component = parse_number<std::uint64_t>(cells[9], "centroidComponent");
            rec.ref_set_component = parse_number<std::uint64_t>(cells[10], "refSetComponent");
            if (cells[11] == "true")
                rec.convergence_capped = true;
            else if (cells[11] == "false")
                rec.convergence_capped = false;
            else
                throw std::runtime_error("parse_records: bad convergenceCapped value '" +
                                         cells[11] + "'");
        }
        records.push_back(std::move(rec));
    }
    if (records.empty()) throw std::runtime_error("parse_records: '" + path + "' holds no records");
    return records;
}

void export_predictions(const Dataset& dataset, std::span<const ExperimentRecord> records,
                        const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("export_predictions: cannot open '" + path + "'");
    out << "dataset,iExponent,kClusters,L,D,kNeighbors,testIndex,trueLabel,predictedLabel\n";
    for (const ExperimentRecord& rec : records) {
        if (rec.predictions.size() != dataset.test.size())
            throw std::runtime_error("export_predictions: record '" + rec.dataset +
                                     "' does not match the dataset's test partition");
        const std::string prefix = rec.dataset + ',' + std::to_string(rec.config.i_exponent) +
                                   ',' + std::to_string(rec.config.k_clusters) + ',' +
                                   std::to_string(rec.config.l_clusters) + ',' +
                                   fmt_double(rec.config.threshold_d) + ',' +
                                   std::to_string(rec.config.k_neighbors) + ',';
        for (std::size_t t = 0; t < rec.predictions.size(); ++t) {
            out << prefix << t << ',' << dataset.class_names[dataset.test[t].label] << ','
                << dataset.class_names[rec.predictions[t]] << '\n';
        }
    }
    if (!out) throw std::runtime_error("export_predictions: write to '" + path + "' failed");
}

}  // namespace rsrm
