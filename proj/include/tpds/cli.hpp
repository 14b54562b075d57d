#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace tpds::cli {

enum ExitCode : int { kOk = 0, kParseError = 2, kAnalysisFailure = 3, kNumericalSuspect = 4 };

/// Runs the `tpds` command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Directory holding the shipped *.spec files: $TPDS_SPEC_DIR, else the build-time location.
std::filesystem::path spec_dir();

/// Output directory for `reproduce`: $TPDS_OUTPUT_DIR, else ./figures.
std::filesystem::path output_dir();

/// Figure ids accepted by `reproduce`.
const std::vector<std::string>& figure_ids();

}  // namespace tpds::cli
