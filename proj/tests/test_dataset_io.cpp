#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "rsrm/dataset_io.hpp"

using rsrm::Dataset;
using rsrm::DatasetSpec;
using rsrm::LabelColumn;
using rsrm::dataset_fingerprint;
using rsrm::export_canonical_csv;
using rsrm::load_dataset;
using rsrm::load_spec;

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path dir;
    TempDir() : dir(fs::temp_directory_path() / "rsrm_io_tests") {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~TempDir() { fs::remove_all(dir); }
    std::string write(const std::string& name, const std::string& content) const {
        std::ofstream out(dir / name);
        out << content;
        return name;
    }
};

DatasetSpec split_spec(const std::string& file, std::size_t first_n) {
    DatasetSpec spec;
    spec.name = "tmp";
    spec.train_file = file;
    spec.label_column.kind = LabelColumn::Kind::Last;
    spec.delimiter = ',';
    spec.split_train = first_n;
    return spec;
}

template <typename Fn>
std::string thrown_message(Fn&& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

bool mentions(const std::string& message, const std::string& needle) {
    return message.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("three-row file split after two rows") {
    TempDir tmp;
    tmp.write("toy.csv", "1,2,A\n3,4,B\n5,6,A\n");
    const Dataset data = load_dataset(split_spec("toy.csv", 2), tmp.dir.string());

    CHECK(data.train.size() == 2);
    CHECK(data.test.size() == 1);
    CHECK(data.num_attributes == 2);
    CHECK(data.num_classes() == 2);
    CHECK(data.class_names == std::vector<std::string>{"A", "B"});
    CHECK(data.train[0].features == rsrm::FeatureVector{1.0, 2.0});
    CHECK(data.train[0].label == 0);
    CHECK(data.train[1].label == 1);
    CHECK(data.test[0].features == rsrm::FeatureVector{5.0, 6.0});
    CHECK(data.test[0].label == 0);
    CHECK(data.train[0].index == 0);
    CHECK(data.train[1].index == 1);
    CHECK(data.test[0].index == 0);
}

TEST_CASE("two-file layout with a first-column label") {
    TempDir tmp;
    tmp.write("train.csv", "A,1,2\nB,3,4\n");
    tmp.write("test.csv", "B,9,9\n");
    DatasetSpec spec;
    spec.name = "tmp";
    spec.train_file = "train.csv";
    spec.test_file = "test.csv";
    spec.label_column.kind = LabelColumn::Kind::First;
    const Dataset data = load_dataset(spec, tmp.dir.string());
    CHECK(data.train.size() == 2);
    CHECK(data.test.size() == 1);
    CHECK(data.train[0].features == rsrm::FeatureVector{1.0, 2.0});
    CHECK(data.test[0].label == 1);
}

TEST_CASE("label column by explicit position") {
    TempDir tmp;
    tmp.write("mid.csv", "1,x,2\n3,y,4\n5,x,6\n");
    DatasetSpec spec = split_spec("mid.csv", 2);
    spec.label_column.kind = LabelColumn::Kind::Index;
    spec.label_column.index = 1;
    const Dataset data = load_dataset(spec, tmp.dir.string());
    CHECK(data.train[0].features == rsrm::FeatureVector{1.0, 2.0});
    CHECK(data.test.size() == 1);
    CHECK(data.test[0].label == 0);
    CHECK(data.class_names == std::vector<std::string>{"x", "y"});
}

TEST_CASE("whitespace delimiter handles runs and leading blanks") {
    TempDir tmp;
    tmp.write("spaced.txt", " 1  2   A\n3 4 B\n5\t6\tA\n");
    DatasetSpec spec = split_spec("spaced.txt", 2);
    spec.delimiter = ' ';
    const Dataset data = load_dataset(spec, tmp.dir.string());
    CHECK(data.train.size() == 2);
    CHECK(data.test.size() == 1);
    CHECK(data.train[0].features == rsrm::FeatureVector{1.0, 2.0});
    CHECK(data.test[0].features == rsrm::FeatureVector{5.0, 6.0});
}

TEST_CASE("ingestion failures are distinct and descriptive") {
    TempDir tmp;

    SUBCASE("missing file") {
        CHECK(mentions(
            thrown_message([&] { load_dataset(split_spec("absent.csv", 1), tmp.dir.string()); }),
            "cannot open"));
    }
    SUBCASE("ragged row") {
        tmp.write("bad.csv", "1,2,A\n3,B\n");
        const std::string msg =
            thrown_message([&] { load_dataset(split_spec("bad.csv", 1), tmp.dir.string()); });
        CHECK(mentions(msg, "ragged row"));
        CHECK(mentions(msg, ":2"));
    }
    SUBCASE("non-numeric attribute") {
        tmp.write("bad.csv", "1,2,A\n3,oops,B\n");
        CHECK(mentions(
            thrown_message([&] { load_dataset(split_spec("bad.csv", 1), tmp.dir.string()); }),
            "non-numeric"));
    }
    SUBCASE("non-finite attribute") {
        tmp.write("bad.csv", "1,2,A\n3,inf,B\n");
        CHECK(mentions(
            thrown_message([&] { load_dataset(split_spec("bad.csv", 1), tmp.dir.string()); }),
            "non-finite"));
    }
    SUBCASE("test label unseen in train") {
        tmp.write("train.csv", "1,2,A\n");
        tmp.write("test.csv", "3,4,Z\n");
        DatasetSpec spec;
        spec.name = "tmp";
        spec.train_file = "train.csv";
        spec.test_file = "test.csv";
        CHECK(mentions(thrown_message([&] { load_dataset(spec, tmp.dir.string()); }),
                       "never appears in the train partition"));
    }
    SUBCASE("expected size mismatch") {
        tmp.write("toy.csv", "1,2,A\n3,4,B\n5,6,A\n");
        DatasetSpec spec = split_spec("toy.csv", 2);
        spec.expected_train = 5;
        CHECK(mentions(thrown_message([&] { load_dataset(spec, tmp.dir.string()); }),
                       "wrong file version"));
    }
    SUBCASE("split larger than the file") {
        tmp.write("toy.csv", "1,2,A\n3,4,B\n");
        CHECK_THROWS_AS(load_dataset(split_spec("toy.csv", 7), tmp.dir.string()),
                        std::runtime_error);
    }
    SUBCASE("attribute arity differs between train and test") {
        tmp.write("train.csv", "1,2,A\n");
        tmp.write("test.csv", "1,2,3,A\n");
        DatasetSpec spec;
        spec.name = "tmp";
        spec.train_file = "train.csv";
        spec.test_file = "test.csv";
        CHECK_THROWS_AS(load_dataset(spec, tmp.dir.string()), std::runtime_error);
    }
}

TEST_CASE("canonical export reloads to an equal dataset") {
    TempDir tmp;
    // Values with awkward decimal expansions must survive exactly.
    tmp.write("src.csv", "0.1,2.5e-3,A\n-7.25,0.30000000000000004,B\n1e300,-0,A\n4,5,B\n");
    const Dataset data = load_dataset(split_spec("src.csv", 3), tmp.dir.string());

    const std::string train_out = (tmp.dir / "canon_train.csv").string();
    const std::string test_out = (tmp.dir / "canon_test.csv").string();
    export_canonical_csv(data, train_out, test_out);

    DatasetSpec reload;
    reload.name = "tmp";
    reload.train_file = "canon_train.csv";
    reload.test_file = "canon_test.csv";
    const Dataset again = load_dataset(reload, tmp.dir.string());

    REQUIRE(again.train.size() == data.train.size());
    REQUIRE(again.test.size() == data.test.size());
    CHECK(again.class_names == data.class_names);
    for (std::size_t i = 0; i < data.train.size(); ++i) {
        CHECK(again.train[i].features == data.train[i].features);
        CHECK(again.train[i].label == data.train[i].label);
    }
    for (std::size_t i = 0; i < data.test.size(); ++i) {
        CHECK(again.test[i].features == data.test[i].features);
        CHECK(again.test[i].label == data.test[i].label);
    }
    CHECK(dataset_fingerprint(again) == dataset_fingerprint(data));
}

TEST_CASE("fingerprints are stable and sensitive") {
    TempDir tmp;
    tmp.write("a.csv", "1,2,A\n3,4,B\n5,6,A\n");
    tmp.write("b.csv", "1,2,A\n3,4.0000001,B\n5,6,A\n");

    const Dataset first = load_dataset(split_spec("a.csv", 2), tmp.dir.string());
    const Dataset second = load_dataset(split_spec("a.csv", 2), tmp.dir.string());
    const Dataset perturbed = load_dataset(split_spec("b.csv", 2), tmp.dir.string());

    CHECK(dataset_fingerprint(first) == dataset_fingerprint(second));
    CHECK(dataset_fingerprint(first) != dataset_fingerprint(perturbed));
    CHECK(dataset_fingerprint(first).size() == 64);
}

TEST_CASE("spec files parse and validate") {
    TempDir tmp;

    SUBCASE("a complete spec") {
        const std::string path = (tmp.dir / "good.json").string();
        std::ofstream(path) << R"({
            "name": "demo",
            "train_file": "demo.csv",
            "label_column": "last",
            "delimiter": ",",
            "split_train": 180,
            "expected_train": 180,
            "expected_test": 60,
            "remotes": [
                {"url": "https://example.org/demo.csv", "file": "demo.csv", "sha256": ""}
            ]
        })";
        const DatasetSpec spec = load_spec(path);
        CHECK(spec.name == "demo");
        CHECK(spec.train_file == "demo.csv");
        CHECK(spec.test_file.empty());
        CHECK(spec.label_column.kind == LabelColumn::Kind::Last);
        CHECK(spec.split_train == 180);
        CHECK(spec.expected_train == 180);
        CHECK(spec.expected_test == 60);
        REQUIRE(spec.remotes.size() == 1);
        CHECK(spec.remotes[0].file == "demo.csv");
        CHECK_FALSE(spec.remotes[0].z_compressed);
    }
    SUBCASE("label column variants") {
        const std::string path = (tmp.dir / "first.json").string();
        std::ofstream(path) << R"({"name":"x","train_file":"t.csv","test_file":"s.csv",
                                   "label_column":"first"})";
        CHECK(load_spec(path).label_column.kind == LabelColumn::Kind::First);

        const std::string idx = (tmp.dir / "index.json").string();
        std::ofstream(idx) << R"({"name":"x","train_file":"t.csv","test_file":"s.csv",
                                  "label_column":3})";
        const DatasetSpec spec = load_spec(idx);
        CHECK(spec.label_column.kind == LabelColumn::Kind::Index);
        CHECK(spec.label_column.index == 3);
    }
    SUBCASE("rejects a spec with neither test file nor split") {
        const std::string path = (tmp.dir / "bad.json").string();
        std::ofstream(path) << R"({"name":"x","train_file":"t.csv"})";
        CHECK_THROWS_AS(load_spec(path), std::runtime_error);
    }
    SUBCASE("rejects a multi-character delimiter") {
        const std::string path = (tmp.dir / "bad.json").string();
        std::ofstream(path) << R"({"name":"x","train_file":"t.csv","split_train":1,
                                   "delimiter":"ab"})";
        CHECK_THROWS_AS(load_spec(path), std::runtime_error);
    }
    SUBCASE("rejects malformed JSON") {
        const std::string path = (tmp.dir / "bad.json").string();
        std::ofstream(path) << "{not json";
        CHECK_THROWS_AS(load_spec(path), std::runtime_error);
    }
}

TEST_CASE("the vendored synthetic dataset loads with its pinned shape") {
    const DatasetSpec spec = load_spec("data/specs/toy.json");
    const Dataset data = load_dataset(spec, "data");
    CHECK(data.name == "toy");
    CHECK(data.train.size() == 180);
    CHECK(data.test.size() == 60);
    CHECK(data.num_attributes == 2);
    CHECK(data.num_classes() == 3);
    CHECK(dataset_fingerprint(data) == dataset_fingerprint(data));
}
