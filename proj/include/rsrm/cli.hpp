#pragma once

namespace rsrm {

/// Full command-line driver: parses argv, dispatches to the fetch-data,
/// baseline, grid, and report subcommands, and maps failures to exit codes
/// (0 ok, 1 usage, 2 data or runtime error, 3 results written but some
/// clustering hit the iteration cap).
int run_cli(int argc, const char* const* argv);

}  // namespace rsrm
