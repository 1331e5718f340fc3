#pragma once

#include <string>

#include "rsrm/dataset_io.hpp"

namespace rsrm {

/// Downloads every remote file listed in the spec into `data_dir`, skipping
/// files that already exist with a matching digest. Compressed sources are
/// decompressed in place. When a spec pins a sha256 the downloaded bytes must
/// match it or the fetch fails; unpinned files have their computed digest
/// printed so it can be pinned later.
void fetch_dataset(const DatasetSpec& spec, const std::string& data_dir);

}  // namespace rsrm
