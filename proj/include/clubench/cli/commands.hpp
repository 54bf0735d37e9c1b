#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "clubench/scoring_protocol.hpp"

namespace clubench::cli {

enum ExitCode : int { kSuccess = 0, kPartialFailure = 1, kUsageError = 2 };

/// `--battery` / `--dataset` filters; empty means everything. A dataset
/// filter may be a bare name or "battery/dataset".
struct Selection {
  std::vector<std::string> batteries;
  std::vector<std::string> datasets;
};

using DatasetKey = std::pair<std::string, std::string>;

/// Every (battery, dataset) under data_root accepted by the selection,
/// sorted. Throws MissingRoot.
std::vector<DatasetKey> select_datasets(const std::filesystem::path& data_root, const Selection& selection);

struct RunOptions {
  std::filesystem::path data_root;
  std::filesystem::path results_root;
  /// Built-in name (kmeans, single, complete, average) or "exec:<command>".
  std::string method;
  /// Stored method name for external tools.
  std::string name = "External";
  int timeout_seconds = 300;
  Selection selection;
  std::uint64_t seed = 0;
  int jobs = 1;
};

struct ScoreOptions {
  std::filesystem::path data_root;
  std::filesystem::path results_root;
  /// Method groups (prefixes of variant names); empty means all.
  std::vector<std::string> methods;
  MetricId metric = MetricId::nca;
  bool markdown = false;
  Selection selection;
  int jobs = 1;
};

struct PlotOptions {
  std::filesystem::path data_root;
  std::string battery;
  std::string dataset;
  /// Reference labelling index, used unless `method` is set.
  int labels_index = 0;
  std::filesystem::path results_root;
  std::string method;
  int k = 0;
  std::filesystem::path out;
};

struct ConfusionOptions {
  std::filesystem::path data_root;
  std::filesystem::path results_root;
  std::string method;
  std::string battery;
  std::string dataset;
  int k = 0;
};

int cmd_list(const std::filesystem::path& data_root, std::ostream& out, std::ostream& err);
int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);
int cmd_score(const ScoreOptions& options, std::ostream& out, std::ostream& err);
int cmd_plot(const PlotOptions& options, std::ostream& out, std::ostream& err);
int cmd_confusion(const ConfusionOptions& options, std::ostream& out, std::ostream& err);

}  // namespace clubench::cli
