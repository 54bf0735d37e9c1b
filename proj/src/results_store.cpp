#include "clubench/results_store.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <system_error>

#include "clubench/benchmark_data.hpp"
#include "clubench/error.hpp"
#include "clubench/gzip_io.hpp"

namespace fs = std::filesystem;

namespace clubench {

namespace {

std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    auto end = line.find(',', pos);
    out.push_back(trim(line.substr(pos, end == std::string_view::npos ? end : end - pos)));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

std::string unquote(std::string_view s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

bool valid_partition(const Labels& labels, int k) {
  if (labels.size() == 0 || labels.minCoeff() < 1 || labels.maxCoeff() != k || k > labels.size()) return false;
  std::vector<char> seen(static_cast<std::size_t>(k) + 1, 0);
  for (Eigen::Index i = 0; i < labels.size(); ++i) seen[static_cast<std::size_t>(labels[i])] = 1;
  return std::find(seen.begin() + 1, seen.end(), 0) == seen.end();
}

Labels parse_single_column(std::string_view text, const std::string& source) {
  std::vector<int> values;
  io::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    auto v = parse_int(line);
    if (!v) {
      throw Error(Errc::ParseError, source + ":" + std::to_string(line_no) + ": expected one integer label");
    }
    values.push_back(*v);
  });
  return Eigen::Map<const Labels>(values.data(), static_cast<Eigen::Index>(values.size()));
}

// Published-repository layout: a CSV header with one variant per column.
// Columns with unparsable entries are skipped.
std::map<std::string, Labels> parse_csv_columns(std::string_view text, const std::string& source,
                                                std::vector<std::string>& warnings) {
  std::vector<std::string> names;
  std::vector<std::vector<int>> columns;
  std::vector<char> broken;
  io::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    auto fields = split_commas(line);
    if (line_no == 1) {
      for (auto f : fields) names.push_back(unquote(f));
      columns.resize(names.size());
      broken.assign(names.size(), 0);
      return;
    }
    if (line.empty()) return;
    if (fields.size() != names.size()) {
      throw Error(Errc::ParseError, source + ":" + std::to_string(line_no) + ": ragged CSV row");
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      auto v = parse_int(fields[c]);
      if (!v) broken[c] = 1;
      else columns[c].push_back(*v);
    }
  });
  std::map<std::string, Labels> out;
  for (std::size_t c = 0; c < names.size(); ++c) {
    if (!is_valid_method_id(names[c])) {
      throw Error(Errc::ParseError, source + ": invalid method name '" + names[c] + "' in header");
    }
    if (broken[c]) {
      warnings.push_back(source + ": column " + names[c] + " has non-integer entries; skipped");
      continue;
    }
    out[names[c]] = Eigen::Map<const Labels>(columns[c].data(), static_cast<Eigen::Index>(columns[c].size()));
  }
  return out;
}

bool looks_like_csv_header(std::string_view text) {
  auto end = text.find('\n');
  auto first = trim(text.substr(0, end));
  if (!first.empty() && first.back() == '\r') first.remove_suffix(1);
  return !first.empty() && !parse_int(first);
}

std::optional<fs::path> find_result_file(const fs::path& stem) {
  auto gz = stem;
  gz += ".gz";
  std::error_code ec;
  if (fs::is_regular_file(gz, ec)) return gz;
  if (fs::is_regular_file(stem, ec)) return stem;
  return std::nullopt;
}

RawResults scan_impl(const fs::path& root, std::string_view group, const std::string& battery,
                     const std::string& dataset, const std::vector<int>& ks,
                     std::vector<std::string>& warnings) {
  RawResults out;
  for (const auto& dir : list_method_dirs(root, group)) {
    for (int k : ks) {
      auto file = find_result_file(root / dir / battery / (dataset + ".result" + std::to_string(k)));
      if (!file) continue;
      const auto text = io::read_maybe_gzip(*file);
      std::map<std::string, Labels> columns;
      const bool csv = looks_like_csv_header(text);
      if (csv) {
        columns = parse_csv_columns(text, file->string(), warnings);
      } else {
        columns.emplace(dir, parse_single_column(text, file->string()));
      }
      for (auto& [name, labels] : columns) {
        if (!valid_partition(labels, k)) {
          // Imported tables may hold failed runs next to good ones.
          if (csv) {
            warnings.push_back(file->string() + ": column " + name + " is not a contiguous 1.." +
                               std::to_string(k) + " partition; skipped");
            continue;
          }
          throw Error(Errc::ParseError, file->string() + ": labels of " + name +
                                            " are not a contiguous 1.." + std::to_string(k) + " partition");
        }
        out[name][k] = std::move(labels);
      }
    }
  }
  return out;
}

}  // namespace

bool is_valid_method_id(std::string_view id) {
  if (id.empty() || id == "." || id == "..") return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
           c == '.' || c == '-';
  });
}

std::vector<std::string> list_method_dirs(const fs::path& results_root, std::string_view method_group) {
  std::error_code ec;
  if (!fs::is_directory(results_root, ec)) {
    throw Error(Errc::MissingRoot, "results root not found: " + results_root.string());
  }
  std::vector<std::string> out;
  for (const auto& entry : fs::directory_iterator(results_root, ec)) {
    if (!entry.is_directory(ec)) continue;
    auto name = entry.path().filename().string();
    if (!is_valid_method_id(name)) continue;
    if (method_group == "*" || name.starts_with(method_group)) out.push_back(name);
  }
  std::sort(out.begin(), out.end());
  return out;
}

RawResults scan_results(const fs::path& results_root, std::string_view method_group,
                        const std::string& battery, const std::string& dataset,
                        const std::vector<int>& ks) {
  std::vector<std::string> ignored;
  return scan_impl(results_root, method_group, battery, dataset, ks, ignored);
}

LoadedResults load_results(const fs::path& results_root, std::string_view method_group,
                           const std::string& battery, const std::string& dataset,
                           const std::vector<int>& ks) {
  LoadedResults out;
  auto raw = scan_impl(results_root, method_group, battery, dataset, ks, out.warnings);
  for (auto& [name, by_k] : raw) {
    auto missing = std::find_if(ks.begin(), ks.end(), [&](int k) { return by_k.count(k) == 0; });
    if (missing != ks.end()) {
      out.warnings.push_back(name + ": no result for " + battery + "/" + dataset + " with k = " +
                             std::to_string(*missing));
      continue;
    }
    const auto n = by_k.begin()->second.size();
    PartitionSet set(n);
    for (auto& [k, labels] : by_k) {
      if (labels.size() != n) {
        throw Error(Errc::ParseError, name + ": partitions of " + battery + "/" + dataset +
                                          " have different lengths");
      }
      set.insert(std::move(labels));
    }
    out.partitions.emplace(name, std::move(set));
  }
  return out;
}

fs::path result_path(const fs::path& results_root, const std::string& method, const std::string& battery,
                     const std::string& dataset, int k) {
  return results_root / method / battery / (dataset + ".result" + std::to_string(k) + ".gz");
}

void save_results(const fs::path& results_root, const std::string& method, const std::string& battery,
                  const std::string& dataset, const PartitionSet& partitions) {
  if (!is_valid_method_id(method)) throw Error(Errc::BadArgument, "invalid method name '" + method + "'");
  if (!is_valid_name(battery) || !is_valid_name(dataset)) {
    throw Error(Errc::BadArgument, "invalid dataset name '" + battery + "/" + dataset + "'");
  }
  for (const auto& [k, labels] : partitions.by_k()) {
    io::write_gzip(result_path(results_root, method, battery, dataset, k), format_labels_text(labels));
  }
}

}  // namespace clubench
