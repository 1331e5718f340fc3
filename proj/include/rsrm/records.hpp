#pragma once

#include <span>
#include <string>
#include <vector>

#include "rsrm/experiment.hpp"

namespace rsrm {

enum class RecordFormat { Csv, JsonLines };

/// Schema-stable export. Columns, in order: dataset, fingerprint, iExponent,
/// kClusters, L, D, kNeighbors, accuracyPercent (4 decimal places),
/// distanceComputations, centroidComponent, refSetComponent,
/// convergenceCapped. Baseline rows carry iExponent = kClusters = L = 0 and
/// D = 0. Byte-identical for identical records.
void export_records(std::span<const ExperimentRecord> records, const std::string& path,
                    RecordFormat format);

/// Reads either format back (auto-detected). Exported fields only:
/// predictions and wall_seconds are not part of the wire schema.
std::vector<ExperimentRecord> parse_records(const std::string& path);

/// Per-item prediction audit file (CSV): one row per (record, test item) with
/// the true and predicted class names.
void export_predictions(const Dataset& dataset, std::span<const ExperimentRecord> records,
                        const std::string& path);

std::string render_records_csv(std::span<const ExperimentRecord> records);

}  // namespace rsrm
