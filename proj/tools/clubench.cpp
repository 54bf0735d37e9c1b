// clubench: run clustering methods over benchmark batteries and score them
// against every reference labelling.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "clubench/cli/commands.hpp"
#include "clubench/error.hpp"

namespace {

std::string env_or_empty(const char* name) {
  const char* v = std::getenv(name);
  return v ? v : "";
}

void add_roots(CLI::App* cmd, std::filesystem::path& data, std::filesystem::path* results) {
  cmd->add_option("--data", data, "benchmark data root (default: $CLUBENCH_DATA)");
  if (results) cmd->add_option("--results", *results, "results root (default: $CLUBENCH_RESULTS)");
}

void add_selection(CLI::App* cmd, clubench::cli::Selection& sel) {
  cmd->add_option("--battery", sel.batteries, "restrict to a battery (repeatable)");
  cmd->add_option("--dataset", sel.datasets, "restrict to a dataset, as name or battery/name (repeatable)");
}

bool require_root(std::filesystem::path& root, const char* env, const char* flag) {
  if (root.empty()) root = env_or_empty(env);
  if (root.empty()) {
    std::cerr << "error: " << flag << " not given and $" << env << " is unset\n";
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = clubench::cli;
  CLI::App app{"Benchmark clustering algorithms against reference partitions"};
  app.require_subcommand(1);

  std::filesystem::path list_data;
  auto* list = app.add_subcommand("list", "list datasets as battery/dataset  n  d  ks");
  add_roots(list, list_data, nullptr);

  cli::RunOptions run_opts;
  auto* run = app.add_subcommand("run", "cluster the selected datasets and store the partitions");
  add_roots(run, run_opts.data_root, &run_opts.results_root);
  add_selection(run, run_opts.selection);
  run->add_option("--method", run_opts.method,
                  "kmeans | single | complete | average | exec:\"tool {data} {k}\"")
      ->required();
  run->add_option("--name", run_opts.name, "stored method name for exec: methods")->capture_default_str();
  run->add_option("--timeout", run_opts.timeout_seconds, "per-invocation timeout for exec: methods (s)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  run->add_option("--seed", run_opts.seed, "random seed")->capture_default_str();
  run->add_option("--jobs", run_opts.jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);

  cli::ScoreOptions score_opts;
  std::string metric = "nca";
  std::string format = "csv";
  auto* score = app.add_subcommand("score", "score stored partitions (max over reference labellings)");
  add_roots(score, score_opts.data_root, &score_opts.results_root);
  add_selection(score, score_opts.selection);
  score->add_option("--method", score_opts.methods, "method group prefix (repeatable; default: all)");
  score->add_option("--metric", metric, "nca | adjusted_rand | nmi")
      ->capture_default_str()
      ->check(CLI::IsMember({"nca", "adjusted_rand", "ari", "nmi"}));
  score->add_option("--format", format, "csv | markdown")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "markdown"}));
  score->add_option("--jobs", score_opts.jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);

  cli::PlotOptions plot_opts;
  auto* plot = app.add_subcommand("plot", "write an SVG scatterplot of a labelling or stored partition");
  add_roots(plot, plot_opts.data_root, &plot_opts.results_root);
  plot->add_option("--battery", plot_opts.battery)->required();
  plot->add_option("--dataset", plot_opts.dataset)->required();
  auto* labels_opt = plot->add_option("--labels", plot_opts.labels_index, "reference labelling index");
  auto* method_opt = plot->add_option("--method", plot_opts.method, "stored method variant");
  plot->add_option("--k", plot_opts.k, "cluster count of the stored partition");
  plot->add_option("--out", plot_opts.out, "output SVG path")->required();
  labels_opt->excludes(method_opt);

  cli::ConfusionOptions conf_opts;
  auto* confusion = app.add_subcommand("confusion", "print the confusion matrix of a stored partition");
  add_roots(confusion, conf_opts.data_root, &conf_opts.results_root);
  confusion->add_option("--method", conf_opts.method, "stored method variant")->required();
  confusion->add_option("--battery", conf_opts.battery)->required();
  confusion->add_option("--dataset", conf_opts.dataset)->required();
  confusion->add_option("--k", conf_opts.k)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kUsageError;
  }

  if (*list) {
    if (!require_root(list_data, "CLUBENCH_DATA", "--data")) return cli::kUsageError;
    return cli::cmd_list(list_data, std::cout, std::cerr);
  }
  if (*run) {
    if (!require_root(run_opts.data_root, "CLUBENCH_DATA", "--data") ||
        !require_root(run_opts.results_root, "CLUBENCH_RESULTS", "--results"))
      return cli::kUsageError;
    return cli::cmd_run(run_opts, std::cout, std::cerr);
  }
  if (*score) {
    if (!require_root(score_opts.data_root, "CLUBENCH_DATA", "--data") ||
        !require_root(score_opts.results_root, "CLUBENCH_RESULTS", "--results"))
      return cli::kUsageError;
    score_opts.metric = clubench::parse_metric(metric);
    score_opts.markdown = format == "markdown";
    return cli::cmd_score(score_opts, std::cout, std::cerr);
  }
  if (*plot) {
    if (!require_root(plot_opts.data_root, "CLUBENCH_DATA", "--data")) return cli::kUsageError;
    if (!plot_opts.method.empty()) {
      if (!require_root(plot_opts.results_root, "CLUBENCH_RESULTS", "--results")) return cli::kUsageError;
      if (plot_opts.k < 2) {
        std::cerr << "error: --method needs --k >= 2\n";
        return cli::kUsageError;
      }
    }
    return cli::cmd_plot(plot_opts, std::cout, std::cerr);
  }
  if (!require_root(conf_opts.data_root, "CLUBENCH_DATA", "--data") ||
      !require_root(conf_opts.results_root, "CLUBENCH_RESULTS", "--results"))
    return cli::kUsageError;
  return cli::cmd_confusion(conf_opts, std::cout, std::cerr);
}
