#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "clubench/scoring_protocol.hpp"

namespace clubench {

/// Method variant names: [A-Za-z0-9_.-]+, not "." or "..".
bool is_valid_method_id(std::string_view id);

/// Every k-partition found for each method variant, possibly incomplete.
using RawResults = std::map<std::string, std::map<int, Labels>>;

struct LoadedResults {
  std::map<std::string, PartitionSet> partitions;
  /// One message per variant dropped for missing a requested k.
  std::vector<std::string> warnings;
};

/// Variant directories under results_root whose name starts with
/// `method_group` ("*" matches all), sorted.
std::vector<std::string> list_method_dirs(const std::filesystem::path& results_root,
                                          std::string_view method_group);

/// Reads <variant>/<battery>/<dataset>.result<k>.gz for each variant
/// directory of the group and each k. A file is either one label per line
/// (the variant is the directory name) or a CSV whose header names one
/// variant per column. Throws MissingRoot or ParseError.
RawResults scan_results(const std::filesystem::path& results_root, std::string_view method_group,
                        const std::string& battery, const std::string& dataset,
                        const std::vector<int>& ks);

/// scan_results restricted to variants that have every requested k.
LoadedResults load_results(const std::filesystem::path& results_root, std::string_view method_group,
                           const std::string& battery, const std::string& dataset,
                           const std::vector<int>& ks);

/// Writes one gzip file per k; reruns with equal input give equal bytes.
void save_results(const std::filesystem::path& results_root, const std::string& method,
                  const std::string& battery, const std::string& dataset,
                  const PartitionSet& partitions);

std::filesystem::path result_path(const std::filesystem::path& results_root, const std::string& method,
                                  const std::string& battery, const std::string& dataset, int k);

}  // namespace clubench
