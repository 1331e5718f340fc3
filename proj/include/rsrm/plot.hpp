#pragma once

#include <span>
#include <string>
#include <vector>

#include "rsrm/experiment.hpp"

namespace rsrm {

/// Indices (into `records`) of the cost/accuracy Pareto front: records for
/// which no other record has both a cost no higher and an accuracy no lower,
/// with at least one of the two strictly better. Returned sorted by ascending
/// cost, ties by ascending index.
std::vector<std::size_t> pareto_front(std::span<const ExperimentRecord> records);

/// Writes a self-contained SVG chart of accuracy versus distance computations,
/// one marker series per distinct threshold value, Pareto-front points
/// highlighted and joined. When `baseline` is non-null its accuracy and cost
/// are drawn as dashed reference lines. The full record table is embedded in a
/// <desc> element so the plot file alone can be re-parsed.
void emit_plot(std::span<const ExperimentRecord> records, const ExperimentRecord* baseline,
               const std::string& path);

}  // namespace rsrm
