#include "clubench/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <system_error>

#include <unistd.h>

#include "clubench/baseline_algorithms.hpp"
#include "clubench/benchmark_data.hpp"
#include "clubench/cli/external_method.hpp"
#include "clubench/cli/parallel.hpp"
#include "clubench/cli/report.hpp"
#include "clubench/cli/svg_plot.hpp"
#include "clubench/error.hpp"
#include "clubench/gzip_io.hpp"
#include "clubench/results_store.hpp"

namespace fs = std::filesystem;

namespace clubench::cli {

namespace {

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::MissingRoot:
    case Errc::MissingDataset:
    case Errc::BadArgument:
    case Errc::IoError:
      return kUsageError;
    default:
      return kPartialFailure;
  }
}

std::string join_ks(const std::vector<int>& ks) {
  std::string s;
  for (std::size_t i = 0; i < ks.size(); ++i) s += (i ? "," : "") + std::to_string(ks[i]);
  return s;
}

bool selected(const std::vector<std::string>& filter, const std::string& value) {
  return filter.empty() || std::find(filter.begin(), filter.end(), value) != filter.end();
}

// Unique scratch directory for data files handed to external tools.
class ScratchDir {
 public:
  ScratchDir() {
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            ("clubench-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string strip_outer_quotes(std::string s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    s = s.substr(1, s.size() - 2);
  }
  return s;
}

Labels stored_partition(const fs::path& results_root, const std::string& method, const std::string& battery,
                        const std::string& dataset, int k) {
  if (!is_valid_method_id(method)) throw Error(Errc::BadArgument, "invalid method name '" + method + "'");
  auto raw = scan_results(results_root, method, battery, dataset, {k});
  auto variant = raw.find(method);
  if (variant == raw.end() || variant->second.count(k) == 0) {
    throw Error(Errc::MissingLabels, "no stored " + std::to_string(k) + "-partition of " + battery + "/" +
                                         dataset + " for " + method);
  }
  return variant->second.at(k);
}

}  // namespace

std::vector<DatasetKey> select_datasets(const fs::path& data_root, const Selection& selection) {
  std::vector<DatasetKey> out;
  for (const auto& battery : list_batteries(data_root)) {
    if (!selected(selection.batteries, battery)) continue;
    for (const auto& dataset : list_datasets(data_root, battery)) {
      if (selection.datasets.empty() || selected(selection.datasets, dataset) ||
          selected(selection.datasets, battery + "/" + dataset)) {
        out.emplace_back(battery, dataset);
      }
    }
  }
  return out;
}

int cmd_list(const fs::path& data_root, std::ostream& out, std::ostream& err) {
  std::vector<DatasetKey> keys;
  try {
    keys = select_datasets(data_root, {});
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  int status = kSuccess;
  for (const auto& [battery, dataset] : keys) {
    try {
      const auto ds = load_dataset(data_root, battery, dataset);
      out << battery << '/' << dataset << "  " << ds.n_points() << "  " << ds.dim() << "  "
          << join_ks(ds.n_clusters()) << '\n';
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      status = kPartialFailure;
    }
  }
  return status;
}

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err) {
  std::vector<DatasetKey> keys;
  std::optional<Clusterer> builtin;
  std::optional<ExternalMethodSpec> external;
  std::string method_name;
  try {
    if (options.method.starts_with("exec:")) {
      external = ExternalMethodSpec::parse(strip_outer_quotes(options.method.substr(5)),
                                           std::chrono::seconds(options.timeout_seconds));
      method_name = options.name;
      if (!is_valid_method_id(method_name)) {
        throw Error(Errc::BadArgument, "invalid method name '" + method_name + "'");
      }
    } else {
      builtin = make_clusterer(options.method, options.seed);
      method_name = method_id(*builtin);
    }
    keys = select_datasets(options.data_root, options.selection);
    if (keys.empty()) throw Error(Errc::BadArgument, "the selection matches no dataset");
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }

  std::optional<ScratchDir> scratch;
  if (external) scratch.emplace();

  std::vector<std::string> messages(keys.size());
  std::vector<char> failed(keys.size(), 0);
  std::mutex sink;
  parallel_for(keys.size(), options.jobs, [&](std::size_t i) {
    const auto& [battery, dataset] = keys[i];
    try {
      const auto ds = load_dataset(options.data_root, battery, dataset);
      const auto ks = ds.distinct_ks();
      PartitionSet partitions(ds.n_points());
      if (builtin) {
        partitions = fit_predict_many(*builtin, ds.data(), ks);
      } else {
        const auto data_file = scratch->path() / (battery + "__" + dataset + ".data");
        io::write_file(data_file, format_data_text(ds.data()));
        for (int k : ks) partitions.insert(run_external(*external, data_file, k, ds.n_points()));
        std::error_code ec;
        fs::remove(data_file, ec);
      }
      std::lock_guard lock(sink);
      save_results(options.results_root, method_name, battery, dataset, partitions);
      messages[i] = "wrote " + method_name + " " + battery + "/" + dataset + " k=" + join_ks(ks);
    } catch (const std::exception& e) {
      failed[i] = 1;
      messages[i] = "failed " + battery + "/" + dataset + ": " + e.what();
    }
  });

  int status = kSuccess;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (failed[i]) {
      err << messages[i] << '\n';
      status = kPartialFailure;
    } else {
      out << messages[i] << '\n';
    }
  }
  return status;
}

int cmd_score(const ScoreOptions& options, std::ostream& out, std::ostream& err) {
  std::vector<DatasetKey> keys;
  try {
    keys = select_datasets(options.data_root, options.selection);
    if (keys.empty()) throw Error(Errc::BadArgument, "the selection matches no dataset");
    if (!fs::is_directory(options.results_root)) {
      throw Error(Errc::MissingRoot, "results root not found: " + options.results_root.string());
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  const std::vector<std::string> groups = options.methods.empty() ? std::vector<std::string>{"*"} : options.methods;

  struct DatasetOutcome {
    std::vector<ScoreRow> rows;
    std::vector<std::string> warnings;
    std::map<std::string, std::set<std::string>> variants;  // group -> variants seen
  };
  std::vector<DatasetOutcome> outcomes(keys.size());

  parallel_for(keys.size(), options.jobs, [&](std::size_t i) {
    const auto& [battery, dataset] = keys[i];
    auto& outcome = outcomes[i];
    std::optional<BenchmarkDataset> ds;
    try {
      ds = load_dataset(options.data_root, battery, dataset);
    } catch (const std::exception& e) {
      outcome.warnings.push_back(battery + "/" + dataset + ": " + e.what());
      return;
    }
    const auto ks = ds->distinct_ks();
    std::set<std::string> scored;
    for (const auto& group : groups) {
      RawResults raw;
      try {
        raw = scan_results(options.results_root, group, battery, dataset, ks);
      } catch (const std::exception& e) {
        outcome.warnings.push_back(battery + "/" + dataset + ": " + e.what());
        continue;
      }
      for (auto& [variant, by_k] : raw) {
        outcome.variants[group].insert(variant);
        if (!scored.insert(variant).second) continue;  // overlapping groups
        ScoreRow row{variant, battery, dataset, options.metric, std::nullopt, std::nullopt};
        try {
          PartitionSet partitions(ds->n_points());
          for (auto& [k, labels] : by_k) partitions.insert(labels);
          const auto detail = get_score_detail(ds->labellings(), partitions, options.metric);
          row.score = detail.score;
          row.k_used = detail.k;
        } catch (const std::exception& e) {
          outcome.warnings.push_back(variant + " on " + battery + "/" + dataset + ": " + e.what());
        }
        outcome.rows.push_back(std::move(row));
      }
    }
  });

  // Methods known for some dataset but absent for another get NA rows.
  std::map<std::string, std::set<std::string>> universe;
  for (const auto& o : outcomes)
    for (const auto& [group, names] : o.variants) universe[group].insert(names.begin(), names.end());

  ScoreReport report;
  std::vector<std::string> warnings;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const auto& [battery, dataset] = keys[i];
    auto& o = outcomes[i];
    std::set<std::string> present;
    for (auto& row : o.rows) {
      present.insert(row.method);
      report.add(std::move(row));
    }
    warnings.insert(warnings.end(), o.warnings.begin(), o.warnings.end());
    for (const auto& group : groups) {
      std::set<std::string> expected = universe[group];
      if (expected.empty() && group != "*") expected.insert(group);
      for (const auto& variant : expected) {
        if (!present.insert(variant).second) continue;
        report.add({variant, battery, dataset, options.metric, std::nullopt, std::nullopt});
        warnings.push_back(variant + " on " + battery + "/" + dataset + ": no stored results");
      }
    }
  }
  report.finalize();
  out << (options.markdown ? report.to_markdown() : report.to_csv());
  for (const auto& w : warnings) err << "warning: " << w << '\n';
  if (!warnings.empty()) err << warnings.size() << " warning(s)\n";
  return kSuccess;
}

int cmd_plot(const PlotOptions& options, std::ostream& out, std::ostream& err) {
  try {
    const auto ds = load_dataset(options.data_root, options.battery, options.dataset);
    if (ds.dim() < 2) throw Error(Errc::BadDimension, ds.qualified_name() + " has d = " + std::to_string(ds.dim()));
    Labels labels;
    std::string title = ds.qualified_name();
    if (options.method.empty()) {
      const auto j = options.labels_index;
      if (j < 0 || static_cast<std::size_t>(j) >= ds.labellings().size()) {
        throw Error(Errc::MissingLabels, ds.qualified_name() + " has no labels" + std::to_string(j));
      }
      labels = ds.labellings()[static_cast<std::size_t>(j)].labels;
      title += " labels" + std::to_string(j);
    } else {
      labels = stored_partition(options.results_root, options.method, options.battery, options.dataset, options.k);
      if (labels.size() != ds.n_points()) throw Error(Errc::LengthMismatch, "stored partition length differs from n");
      title += " " + options.method + " k=" + std::to_string(options.k);
    }
    io::write_file(options.out, render_scatter_svg(ds.data(), labels, title));
    out << "wrote " << options.out.string() << '\n';
    return kSuccess;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

int cmd_confusion(const ConfusionOptions& options, std::ostream& out, std::ostream& err) {
  try {
    const auto ds = load_dataset(options.data_root, options.battery, options.dataset);
    std::vector<std::size_t> matching;
    for (std::size_t j = 0; j < ds.labellings().size(); ++j)
      if (ds.labellings()[j].n_clusters == options.k) matching.push_back(j);
    if (matching.empty()) {
      throw Error(Errc::MissingK, ds.qualified_name() + " has no reference labelling with k = " +
                                      std::to_string(options.k));
    }
    const auto pred = stored_partition(options.results_root, options.method, options.battery, options.dataset,
                                       options.k);
    if (pred.size() != ds.n_points()) throw Error(Errc::LengthMismatch, "stored partition length differs from n");
    const int k_pred = pred.maxCoeff();

    for (std::size_t j : matching) {
      const auto& ref = ds.labellings()[j];
      // Row 0 holds the reference noise points.
      Counts full = Counts::Zero(ref.n_clusters + 1, k_pred);
      for (Eigen::Index t = 0; t < pred.size(); ++t) ++full(ref.labels[t], pred[t] - 1);

      std::vector<std::string> row_names;
      for (int i = 0; i <= ref.n_clusters; ++i) row_names.push_back(i == 0 ? "0 (excluded)" : std::to_string(i));
      const bool noise = ref.has_noise();
      std::size_t name_w = 0;
      for (int i = noise ? 0 : 1; i <= ref.n_clusters; ++i)
        name_w = std::max(name_w, row_names[static_cast<std::size_t>(i)].size());
      const auto cell_w = std::max<std::size_t>(4, std::to_string(full.maxCoeff()).size() + 1);
      auto cell = [&](const std::string& s) { return std::string(cell_w - std::min(cell_w, s.size()), ' ') + s; };

      out << ds.qualified_name() << ": " << options.method << " (k=" << k_pred << ") vs labels" << j << '\n';
      out << std::string(name_w, ' ');
      for (int c = 1; c <= k_pred; ++c) out << cell(std::to_string(c));
      out << '\n';
      for (int i = noise ? 0 : 1; i <= ref.n_clusters; ++i) {
        const auto& name = row_names[static_cast<std::size_t>(i)];
        out << std::string(name_w - name.size(), ' ') << name;
        for (int c = 0; c < k_pred; ++c) out << cell(std::to_string(full(i, c)));
        out << '\n';
      }
      char buf[64];
      std::snprintf(buf, sizeof(buf), "nca = %.6f\n", score_one(ref, pred, MetricId::nca));
      out << buf;
    }
    return kSuccess;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace clubench::cli
