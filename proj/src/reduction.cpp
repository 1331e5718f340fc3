#include "rsrm/reduction.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rsrm {

RsrmModel build_model(std::shared_ptr<const Clustering> clustering,
                      std::span<const Instance> train, double threshold_d) {
    if (!clustering) throw std::invalid_argument("build_model: null clustering");
    if (threshold_d <= 0.0) throw std::invalid_argument("build_model: threshold_d must be > 0");

    RsrmModel model;
    model.clustering = std::move(clustering);
    model.threshold_d = threshold_d;
    model.train = train;
    model.partitions.reserve(model.clustering->k());

    std::vector<double> dist;
    for (int c = 0; c < model.clustering->k(); ++c) {
        const Cluster& cluster = model.clustering->clusters[c];
        ClusterPartition part;
        part.cluster_ordinal = c;

        dist.clear();
        dist.reserve(cluster.members.size());
        double sum = 0.0;
        for (const int m : cluster.members) {
            const double d = euclidean_distance(train[m].features, cluster.centroid);
            dist.push_back(d);
            sum += d;
        }
        part.avg_dist = sum / static_cast<double>(cluster.members.size());
        if (part.avg_dist == 0.0) ++model.zero_avg_dist_clusters;

        const double radius = threshold_d * part.avg_dist;
        for (std::size_t j = 0; j < cluster.members.size(); ++j) {
            if (dist[j] <= radius)
                part.core.push_back(cluster.members[j]);
            else
                part.peripheral.push_back(cluster.members[j]);
        }
        model.partitions.push_back(std::move(part));
    }
    return model;
}

RsrmModel build_model(Clustering clustering, std::span<const Instance> train,
                      double threshold_d) {
    return build_model(std::make_shared<const Clustering>(std::move(clustering)), train,
                       threshold_d);
}

std::pair<std::vector<int>, QueryTrace> assemble_reference_set(const RsrmModel& model,
                                                               std::span<const double> x,
                                                               int l_clusters,
                                                               DistanceCounter& counter) {
    const auto ranked = rank_clusters(*model.clustering, x, l_clusters, counter);
    QueryTrace trace;
    trace.centroid_distances = static_cast<std::uint64_t>(model.k());
    trace.nearest_cluster = ranked[0].ordinal;

    const ClusterPartition& nearest = model.partitions[ranked[0].ordinal];
    const std::vector<int>& nearest_members =
        model.clustering->clusters[ranked[0].ordinal].members;

    std::vector<int> ref;
    if (ranked[0].distance <= model.threshold_d * nearest.avg_dist) {
        trace.inside_core = true;
        ref = nearest_members;  // the full member list, core and peripheral alike
    } else {
        ref = nearest_members;
        for (std::size_t j = 1; j < ranked.size(); ++j) {
            const std::vector<int>& ps = model.partitions[ranked[j].ordinal].peripheral;
            ref.insert(ref.end(), ps.begin(), ps.end());
        }
        // Clusters are disjoint, so a plain sort restores ascending order.
        std::sort(ref.begin(), ref.end());
    }
    trace.ref_set_size = static_cast<int>(ref.size());
    return {std::move(ref), trace};
}

std::pair<int, QueryTrace> rsrm_classify(const RsrmModel& model, std::span<const double> x,
                                         int k_neighbors, int l_clusters,
                                         DistanceCounter& counter) {
    if (k_neighbors < 1) throw std::invalid_argument("rsrm_classify: k_neighbors must be >= 1");
    auto [ref, trace] = assemble_reference_set(model, x, l_clusters, counter);
    const NeighborList neighbors = find_k_nearest(model.train, ref, x, k_neighbors, counter);
    trace.ref_set_distances = ref.size();
    return {vote(neighbors, model.train), trace};
}

namespace {

constexpr const char* kModelMagic = "rsrm-model";
constexpr int kModelVersion = 1;

std::string fmt_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& tok, const char* what) {
    double v = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
        throw std::runtime_error(std::string("model file: bad ") + what + " value '" + tok + "'");
    return v;
}

}  // namespace

void save_model(const RsrmModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("save_model: cannot open '" + path + "' for writing");

    const Clustering& cl = *model.clustering;
    out << kModelMagic << ' ' << kModelVersion << '\n';
    out << "k " << cl.k() << '\n';
    out << "d " << fmt_double(model.threshold_d) << '\n';
    out << "dim " << (cl.clusters.empty() ? 0 : cl.clusters[0].centroid.size()) << '\n';
    out << "iterations " << cl.iterations << '\n';
    out << "capped " << (cl.capped ? 1 : 0) << '\n';
    for (int c = 0; c < cl.k(); ++c) {
        out << "centroid " << c;
        for (const double v : cl.clusters[c].centroid) out << ' ' << fmt_double(v);
        out << '\n';
        out << "avgdist " << c << ' ' << fmt_double(model.partitions[c].avg_dist) << '\n';
        out << "core " << c << ' ' << model.partitions[c].core.size();
        for (const int m : model.partitions[c].core) out << ' ' << m;
        out << '\n';
        out << "peripheral " << c << ' ' << model.partitions[c].peripheral.size();
        for (const int m : model.partitions[c].peripheral) out << ' ' << m;
        out << '\n';
    }
    if (!out) throw std::runtime_error("save_model: write to '" + path + "' failed");
}

RsrmModel load_model(const std::string& path, std::span<const Instance> train) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_model: cannot open '" + path + "'");

    auto fail = [&path](const std::string& why) -> std::runtime_error {
        return std::runtime_error("load_model: '" + path + "': " + why);
    };

    std::string magic;
    int version = -1;
    if (!(in >> magic >> version) || magic != kModelMagic) throw fail("not a model file");
    if (version != kModelVersion) throw fail("unsupported version " + std::to_string(version));

    std::string key;
    int k = -1;
    std::size_t dim = 0;
    Clustering cl;
    RsrmModel model;

    auto expect = [&](const char* want) {
        if (!(in >> key) || key != want) throw fail(std::string("expected '") + want + "' field");
    };

    expect("k");
    if (!(in >> k) || k < 1) throw fail("bad cluster count");
    expect("d");
    {
        std::string tok;
        in >> tok;
        model.threshold_d = parse_double(tok, "d");
        if (model.threshold_d <= 0.0) throw fail("non-positive threshold");
    }
    expect("dim");
    if (!(in >> dim)) throw fail("bad dimension");
    expect("iterations");
    if (!(in >> cl.iterations)) throw fail("bad iteration count");
    expect("capped");
    {
        int capped = 0;
        if (!(in >> capped)) throw fail("bad capped flag");
        cl.capped = capped != 0;
    }

    cl.clusters.resize(k);
    model.partitions.resize(k);
    std::string tok;
    for (int c = 0; c < k; ++c) {
        int ord = -1;
        expect("centroid");
        if (!(in >> ord) || ord != c) throw fail("centroid records out of order");
        cl.clusters[c].centroid.resize(dim);
        for (std::size_t a = 0; a < dim; ++a) {
            if (!(in >> tok)) throw fail("truncated centroid");
            cl.clusters[c].centroid[a] = parse_double(tok, "centroid");
        }
        expect("avgdist");
        if (!(in >> ord) || ord != c) throw fail("avgdist records out of order");
        if (!(in >> tok)) throw fail("truncated avgdist");
        model.partitions[c].cluster_ordinal = c;
        model.partitions[c].avg_dist = parse_double(tok, "avgdist");
        if (model.partitions[c].avg_dist == 0.0) ++model.zero_avg_dist_clusters;

        auto read_index_list = [&](const char* field, std::vector<int>& dst) {
            expect(field);
            std::size_t count = 0;
            if (!(in >> ord) || ord != c) throw fail(std::string(field) + " records out of order");
            if (!(in >> count)) throw fail(std::string("bad ") + field + " count");
            dst.resize(count);
            for (std::size_t j = 0; j < count; ++j) {
                if (!(in >> dst[j])) throw fail(std::string("truncated ") + field + " list");
                if (dst[j] < 0 || static_cast<std::size_t>(dst[j]) >= train.size())
                    throw fail("member index out of range");
            }
        };
        read_index_list("core", model.partitions[c].core);
        read_index_list("peripheral", model.partitions[c].peripheral);

        std::vector<int>& members = cl.clusters[c].members;
        members.reserve(model.partitions[c].core.size() + model.partitions[c].peripheral.size());
        std::merge(model.partitions[c].core.begin(), model.partitions[c].core.end(),
                   model.partitions[c].peripheral.begin(), model.partitions[c].peripheral.end(),
                   std::back_inserter(members));
        if (members.empty()) throw fail("empty cluster");
    }

    // Members must partition the training set.
    std::vector<char> seen(train.size(), 0);
    std::size_t total = 0;
    for (const Cluster& cluster : cl.clusters) {
        for (const int m : cluster.members) {
            if (seen[m]) throw fail("duplicate member index " + std::to_string(m));
            seen[m] = 1;
            ++total;
        }
    }
    if (total != train.size())
        throw fail("clusters cover " + std::to_string(total) + " of " +
                   std::to_string(train.size()) + " training items");
    if (!train.empty() && train[0].features.size() != dim)
        throw fail("model dimension does not match the training data");

    model.clustering = std::make_shared<const Clustering>(std::move(cl));
    model.train = train;
    return model;
}

}  // namespace rsrm
