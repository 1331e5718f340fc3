#include "rsrm/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

#include "rsrm/records.hpp"

namespace rsrm {

namespace {

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (const char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

double nice_num(double x, bool round_mode) {
    const double exp10 = std::floor(std::log10(x));
    const double f = x / std::pow(10.0, exp10);
    double nf;
    if (round_mode) {
        if (f < 1.5)
            nf = 1;
        else if (f < 3)
            nf = 2;
        else if (f < 7)
            nf = 5;
        else
            nf = 10;
    } else {
        if (f <= 1)
            nf = 1;
        else if (f <= 2)
            nf = 2;
        else if (f <= 5)
            nf = 5;
        else
            nf = 10;
    }
    return nf * std::pow(10.0, exp10);
}

struct Axis {
    double lo = 0;
    double hi = 1;
    double step = 1;
};

Axis nice_axis(double lo, double hi, int max_ticks = 6) {
    if (!(hi > lo)) {
        const double pad = std::max(1.0, std::fabs(lo) * 0.1);
        lo -= pad;
        hi += pad;
    }
    const double range = nice_num(hi - lo, false);
    Axis a;
    a.step = nice_num(range / (max_ticks - 1), true);
    a.lo = std::floor(lo / a.step) * a.step;
    a.hi = std::ceil(hi / a.step) * a.step;
    return a;
}

constexpr const char* kColors[] = {"#d62728", "#2ca02c", "#1f77b4",
                                   "#9467bd", "#ff7f0e", "#8c564b"};
constexpr int kNumColors = 6;

void append_marker(std::string& svg, int series, double cx, double cy, const char* color) {
    switch (series % 3) {
        case 0:
            svg += "<circle cx=\"" + fmt(cx) + "\" cy=\"" + fmt(cy) + "\" r=\"5\" fill=\"" +
                   color + "\"/>\n";
            break;
        case 1:
            svg += "<path d=\"M " + fmt(cx) + " " + fmt(cy - 6) + " L " + fmt(cx + 5.5) + " " +
                   fmt(cy + 4.5) + " L " + fmt(cx - 5.5) + " " + fmt(cy + 4.5) +
                   " Z\" fill=\"" + color + "\"/>\n";
            break;
        default:
            svg += "<rect x=\"" + fmt(cx - 4.5) + "\" y=\"" + fmt(cy - 4.5) +
                   "\" width=\"9\" height=\"9\" fill=\"" + color + "\"/>\n";
            break;
    }
}

}  // namespace

std::vector<std::size_t> pareto_front(std::span<const ExperimentRecord> records) {
    std::vector<std::size_t> front;
    for (std::size_t r = 0; r < records.size(); ++r) {
        bool dominated = false;
        for (std::size_t s = 0; s < records.size() && !dominated; ++s) {
            if (s == r) continue;
            const bool cost_le = records[s].distance_computations <=
                                 records[r].distance_computations;
            const bool acc_ge = records[s].accuracy_percent >= records[r].accuracy_percent;
            const bool strict = records[s].distance_computations <
                                        records[r].distance_computations ||
                                records[s].accuracy_percent > records[r].accuracy_percent;
            dominated = cost_le && acc_ge && strict;
        }
        if (!dominated) front.push_back(r);
    }
    std::sort(front.begin(), front.end(), [&](std::size_t a, std::size_t b) {
        if (records[a].distance_computations != records[b].distance_computations)
            return records[a].distance_computations < records[b].distance_computations;
        return a < b;
    });
    return front;
}

void emit_plot(std::span<const ExperimentRecord> records, const ExperimentRecord* baseline,
               const std::string& path) {
    if (records.empty()) throw std::invalid_argument("emit_plot: no records");

    constexpr double kWidth = 960, kHeight = 640;
    constexpr double kLeft = 80, kTop = 56, kRight = kWidth - 200, kBottom = kHeight - 72;
    const double plot_w = kRight - kLeft;
    const double plot_h = kBottom - kTop;

    // Series grouping by threshold, in ascending threshold order.
    std::map<double, std::vector<std::size_t>> series;
    for (std::size_t r = 0; r < records.size(); ++r)
        series[records[r].config.threshold_d].push_back(r);

    double cost_lo = records[0].distance_computations / 1e6;
    double cost_hi = cost_lo;
    double acc_lo = records[0].accuracy_percent;
    double acc_hi = acc_lo;
    for (const ExperimentRecord& rec : records) {
        cost_lo = std::min(cost_lo, rec.distance_computations / 1e6);
        cost_hi = std::max(cost_hi, rec.distance_computations / 1e6);
        acc_lo = std::min(acc_lo, rec.accuracy_percent);
        acc_hi = std::max(acc_hi, rec.accuracy_percent);
    }
    if (baseline) {
        cost_lo = std::min(cost_lo, baseline->distance_computations / 1e6);
        cost_hi = std::max(cost_hi, baseline->distance_computations / 1e6);
        acc_lo = std::min(acc_lo, baseline->accuracy_percent);
        acc_hi = std::max(acc_hi, baseline->accuracy_percent);
    }
    const Axis xa = nice_axis(cost_lo, cost_hi, 7);
    const Axis ya = nice_axis(acc_lo, acc_hi, 7);

    const auto x_of = [&](double cost_millions) {
        return kLeft + (cost_millions - xa.lo) / (xa.hi - xa.lo) * plot_w;
    };
    const auto y_of = [&](double acc) { return kTop + (ya.hi - acc) / (ya.hi - ya.lo) * plot_h; };

    std::string title = "accuracy vs distance computations";
    bool one_dataset = true;
    for (const ExperimentRecord& rec : records)
        one_dataset = one_dataset && rec.dataset == records[0].dataset;
    if (one_dataset) title = records[0].dataset + ": " + title;

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"960\" height=\"640\" "
           "viewBox=\"0 0 960 640\" font-family=\"Helvetica, Arial, sans-serif\">\n";
    svg += "<title>" + xml_escape(title) + "</title>\n";
    svg += "<desc>" + xml_escape(render_records_csv(records)) + "</desc>\n";
    svg += "<rect width=\"960\" height=\"640\" fill=\"#ffffff\"/>\n";
    svg += "<text x=\"" + fmt((kLeft + kRight) / 2) +
           "\" y=\"28\" font-size=\"18\" text-anchor=\"middle\" fill=\"#222222\">" +
           xml_escape(title) + "</text>\n";

    // Grid and ticks.
    for (double t = xa.lo; t <= xa.hi + xa.step / 2; t += xa.step) {
        const double x = x_of(t);
        svg += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" + fmt(x) +
               "\" y2=\"" + fmt(kBottom) + "\" stroke=\"#dddddd\"/>\n";
        svg += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(kBottom + 20) +
               "\" font-size=\"12\" text-anchor=\"middle\" fill=\"#444444\">" + fmt_tick(t) +
               "</text>\n";
    }
    for (double t = ya.lo; t <= ya.hi + ya.step / 2; t += ya.step) {
        const double y = y_of(t);
        svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(kRight) +
               "\" y2=\"" + fmt(y) + "\" stroke=\"#dddddd\"/>\n";
        svg += "<text x=\"" + fmt(kLeft - 8) + "\" y=\"" + fmt(y + 4) +
               "\" font-size=\"12\" text-anchor=\"end\" fill=\"#444444\">" + fmt_tick(t) +
               "</text>\n";
    }
    svg += "<rect x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop) + "\" width=\"" + fmt(plot_w) +
           "\" height=\"" + fmt(plot_h) + "\" fill=\"none\" stroke=\"#444444\"/>\n";
    svg += "<text x=\"" + fmt((kLeft + kRight) / 2) + "\" y=\"" + fmt(kHeight - 24) +
           "\" font-size=\"14\" text-anchor=\"middle\" fill=\"#222222\">distance computations "
           "(millions)</text>\n";
    svg += "<text x=\"22\" y=\"" + fmt((kTop + kBottom) / 2) +
           "\" font-size=\"14\" text-anchor=\"middle\" fill=\"#222222\" transform=\"rotate(-90 "
           "22 " +
           fmt((kTop + kBottom) / 2) + ")\">accuracy (%)</text>\n";

    // Baseline reference lines.
    if (baseline) {
        const double by = y_of(baseline->accuracy_percent);
        const double bx = x_of(baseline->distance_computations / 1e6);
        svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(by) + "\" x2=\"" + fmt(kRight) +
               "\" y2=\"" + fmt(by) +
               "\" stroke=\"#555555\" stroke-dasharray=\"6 4\"/>\n";
        svg += "<line x1=\"" + fmt(bx) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" + fmt(bx) +
               "\" y2=\"" + fmt(kBottom) +
               "\" stroke=\"#555555\" stroke-dasharray=\"6 4\"/>\n";
    }

    // Pareto front polyline under the markers.
    const std::vector<std::size_t> front = pareto_front(records);
    if (front.size() > 1) {
        svg += "<polyline fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < front.size(); ++i) {
            const ExperimentRecord& rec = records[front[i]];
            if (i) svg += ' ';
            svg += fmt(x_of(rec.distance_computations / 1e6)) + "," +
                   fmt(y_of(rec.accuracy_percent));
        }
        svg += "\"/>\n";
    }
    for (const std::size_t idx : front) {
        const ExperimentRecord& rec = records[idx];
        svg += "<circle cx=\"" + fmt(x_of(rec.distance_computations / 1e6)) + "\" cy=\"" +
               fmt(y_of(rec.accuracy_percent)) +
               "\" r=\"8\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";
    }

    // Data markers, one series per threshold.
    int series_idx = 0;
    for (const auto& [threshold, members] : series) {
        const char* color = kColors[series_idx % kNumColors];
        for (const std::size_t idx : members) {
            const ExperimentRecord& rec = records[idx];
            append_marker(svg, series_idx, x_of(rec.distance_computations / 1e6),
                          y_of(rec.accuracy_percent), color);
        }
        ++series_idx;
    }

    // Legend.
    double ly = kTop + 10;
    const double lx = kRight + 18;
    series_idx = 0;
    for (const auto& [threshold, members] : series) {
        append_marker(svg, series_idx, lx + 6, ly, kColors[series_idx % kNumColors]);
        svg += "<text x=\"" + fmt(lx + 20) + "\" y=\"" + fmt(ly + 4) +
               "\" font-size=\"13\" fill=\"#222222\">D = " + fmt_tick(threshold) + "</text>\n";
        ly += 24;
        ++series_idx;
    }
    svg += "<circle cx=\"" + fmt(lx + 6) + "\" cy=\"" + fmt(ly) +
           "\" r=\"8\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";
    svg += "<text x=\"" + fmt(lx + 20) + "\" y=\"" + fmt(ly + 4) +
           "\" font-size=\"13\" fill=\"#222222\">Pareto front</text>\n";
    ly += 24;
    if (baseline) {
        svg += "<line x1=\"" + fmt(lx - 2) + "\" y1=\"" + fmt(ly) + "\" x2=\"" + fmt(lx + 14) +
               "\" y2=\"" + fmt(ly) + "\" stroke=\"#555555\" stroke-dasharray=\"6 4\"/>\n";
        svg += "<text x=\"" + fmt(lx + 20) + "\" y=\"" + fmt(ly + 4) +
               "\" font-size=\"13\" fill=\"#222222\">full-scan reference</text>\n";
    }

    svg += "</svg>\n";

    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("emit_plot: cannot open '" + path + "'");
    out << svg;
    if (!out) throw std::runtime_error("emit_plot: write to '" + path + "' failed");
}

}  // namespace rsrm
