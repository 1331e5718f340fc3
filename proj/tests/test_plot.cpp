#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "rsrm/plot.hpp"
#include "rsrm/records.hpp"

using rsrm::ExperimentRecord;
using rsrm::emit_plot;
using rsrm::pareto_front;

namespace fs = std::filesystem;

namespace {

ExperimentRecord point(double accuracy, std::uint64_t cost, double d = 1.0) {
    ExperimentRecord rec;
    rec.dataset = "blobs";
    rec.fingerprint = "f";
    rec.config = {1, 4, 2, d, 3};
    rec.accuracy_percent = accuracy;
    rec.distance_computations = cost;
    rec.centroid_component = 0;
    rec.ref_set_component = cost;
    return rec;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

std::string escape_like_xml(const std::string& s) {
    std::string out;
    for (const char c : s) {
        if (c == '&')
            out += "&amp;";
        else if (c == '<')
            out += "&lt;";
        else if (c == '>')
            out += "&gt;";
        else
            out += c;
    }
    return out;
}

}  // namespace

TEST_CASE("pareto front keeps exactly the undominated points") {
    std::vector<ExperimentRecord> records;
    records.push_back(point(90.0, 1000));  // dominated by the next point
    records.push_back(point(92.0, 900));
    records.push_back(point(95.0, 5000));
    records.push_back(point(85.0, 500));
    records.push_back(point(92.0, 900));  // duplicate of an optimal point: kept

    const auto front = pareto_front(records);
    CHECK(front == std::vector<std::size_t>{3, 1, 4, 2});
}

TEST_CASE("a single point beats everything else") {
    std::vector<ExperimentRecord> records;
    records.push_back(point(99.0, 100));
    for (int i = 0; i < 5; ++i)
        records.push_back(point(90.0 - i, 200 + 10 * static_cast<std::uint64_t>(i)));
    const auto front = pareto_front(records);
    CHECK(front == std::vector<std::size_t>{0});
}

TEST_CASE("front membership matches a brute-force dominance scan") {
    std::vector<ExperimentRecord> records;
    std::uint64_t cost = 100;
    for (int i = 0; i < 20; ++i) {
        cost = cost * 17 % 4096 + 50;
        records.push_back(point(80.0 + (i * 7) % 15, cost));
    }
    const auto front = pareto_front(records);

    for (std::size_t r = 0; r < records.size(); ++r) {
        bool dominated = false;
        for (std::size_t s = 0; s < records.size(); ++s) {
            if (s == r) continue;
            if (records[s].distance_computations <= records[r].distance_computations &&
                records[s].accuracy_percent >= records[r].accuracy_percent &&
                (records[s].distance_computations < records[r].distance_computations ||
                 records[s].accuracy_percent > records[r].accuracy_percent))
                dominated = true;
        }
        const bool on_front =
            std::find(front.begin(), front.end(), r) != front.end();
        CHECK(on_front == !dominated);
    }
}

TEST_CASE("plot emission embeds the exact data table and one series per threshold") {
    std::vector<ExperimentRecord> records;
    for (int i = 1; i <= 4; ++i)
        for (const double d : {1.0, 1.5, 2.0})
            records.push_back(point(80.0 + i + d, 1000u * i + static_cast<std::uint64_t>(d * 10), d));

    ExperimentRecord baseline = point(93.5, 20000, 0.0);
    baseline.config = {0, 0, 0, 0.0, 3};

    const std::string path = (fs::temp_directory_path() / "rsrm_plot.svg").string();
    emit_plot(records, &baseline, path);
    const std::string svg = read_file(path);

    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("D = 1<") != std::string::npos);
    CHECK(svg.find("D = 1.5<") != std::string::npos);
    CHECK(svg.find("D = 2<") != std::string::npos);
    CHECK(svg.find("Pareto front") != std::string::npos);
    CHECK(svg.find("full-scan reference") != std::string::npos);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);

    // The rendered record table is embedded byte for byte (after XML escaping).
    const std::string table = escape_like_xml(rsrm::render_records_csv(records));
    CHECK(svg.find(table) != std::string::npos);

    // Re-emission is deterministic.
    const std::string path2 = (fs::temp_directory_path() / "rsrm_plot_again.svg").string();
    emit_plot(records, &baseline, path2);
    CHECK(read_file(path2) == svg);

    fs::remove(path);
    fs::remove(path2);
}

TEST_CASE("single-record plot renders without a baseline") {
    const std::vector<ExperimentRecord> records{point(91.0, 700)};
    const std::string path = (fs::temp_directory_path() / "rsrm_plot_single.svg").string();
    emit_plot(records, nullptr, path);
    const std::string svg = read_file(path);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("full-scan reference") == std::string::npos);
    fs::remove(path);
}

TEST_CASE("plot emission rejects an empty record set") {
    CHECK_THROWS_AS(emit_plot({}, nullptr, "unused.svg"), std::invalid_argument);
}
