#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "clubench/types.hpp"

namespace clubench::cli {

/// An out-of-process clusterer: argv template with `{data}` and `{k}`
/// placeholders. The tool prints one label (1..k) per point on stdout.
struct ExternalMethodSpec {
  std::vector<std::string> argv_template;
  std::chrono::seconds timeout{300};

  /// Splits `command` into words (single and double quotes group words) and
  /// checks that both placeholders occur. Throws BadArgument.
  static ExternalMethodSpec parse(const std::string& command, std::chrono::seconds timeout);

  std::vector<std::string> expand(const std::filesystem::path& data_file, int k) const;
};

/// Runs the tool once and returns its validated labels. Throws
/// ExternalFailure on spawn errors, a nonzero exit, a timeout, or output
/// that is not n contiguous labels in 1..k.
Labels run_external(const ExternalMethodSpec& spec, const std::filesystem::path& data_file, int k,
                    Eigen::Index n_points);

}  // namespace clubench::cli
