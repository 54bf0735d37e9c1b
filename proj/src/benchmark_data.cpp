#include "clubench/benchmark_data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <set>
#include <system_error>

#include "clubench/error.hpp"
#include "clubench/gzip_io.hpp"

namespace fs = std::filesystem;

namespace clubench {

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t'; }

bool is_skippable(std::string_view line) {
  auto first = std::find_if_not(line.begin(), line.end(), is_blank);
  return first == line.end() || *first == '#' || *first == '%';
}

template <typename Fn>
void for_each_field(std::string_view line, Fn&& fn) {
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && is_blank(line[pos])) ++pos;
    if (pos == line.size()) break;
    auto end = pos;
    while (end < line.size() && !is_blank(line[end])) ++end;
    fn(line.substr(pos, end - pos));
    pos = end;
  }
}

std::string where(const std::string& source, std::size_t line_no) {
  return source + ":" + std::to_string(line_no);
}

// Resolves "<stem>.gz" first, then the uncompressed "<stem>".
std::optional<fs::path> find_file(const fs::path& stem) {
  auto gz = stem;
  gz += ".gz";
  std::error_code ec;
  if (fs::is_regular_file(gz, ec)) return gz;
  if (fs::is_regular_file(stem, ec)) return stem;
  return std::nullopt;
}

fs::path stem_path(const fs::path& root, const std::string& battery,
                   const std::string& dataset, std::string_view suffix) {
  return root / battery / (dataset + std::string(suffix));
}

std::optional<std::string> dataset_name_of(const fs::path& file) {
  auto name = file.filename().string();
  for (std::string_view suffix : {".data.gz", ".data"}) {
    if (name.size() > suffix.size() && name.ends_with(suffix)) {
      name.resize(name.size() - suffix.size());
      if (is_valid_name(name)) return name;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

ReferenceLabelling ReferenceLabelling::from_labels(Labels labels) {
  const int k = validate_labelling(labels);
  return ReferenceLabelling{std::move(labels), k};
}

int validate_labelling(const Eigen::Ref<const Labels>& labels) {
  if (labels.size() == 0) throw Error(Errc::LabelError, "empty label vector");
  if (labels.minCoeff() < 0) throw Error(Errc::LabelError, "negative label");
  const int k = labels.maxCoeff();
  if (k < 2) throw Error(Errc::LabelError, "k < 2 (k = " + std::to_string(k) + ")");
  if (k > labels.size()) {
    throw Error(Errc::LabelError, "gap in cluster IDs: k = " + std::to_string(k) +
                                      " exceeds the number of points");
  }
  std::vector<bool> seen(static_cast<std::size_t>(k) + 1, false);
  for (Eigen::Index i = 0; i < labels.size(); ++i) seen[static_cast<std::size_t>(labels[i])] = true;
  for (int c = 1; c <= k; ++c) {
    if (!seen[static_cast<std::size_t>(c)]) {
      throw Error(Errc::LabelError, "gap in cluster IDs: label " + std::to_string(c) + " missing");
    }
  }
  return k;
}

bool is_valid_name(std::string_view name) {
  return !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

BenchmarkDataset BenchmarkDataset::make(std::string battery, std::string dataset,
                                        PointMatrix<double> data,
                                        std::vector<ReferenceLabelling> labellings) {
  if (!is_valid_name(battery)) throw Error(Errc::InvariantError, "invalid battery name '" + battery + "'");
  if (!is_valid_name(dataset)) throw Error(Errc::InvariantError, "invalid dataset name '" + dataset + "'");
  if (data.rows() < 1 || data.cols() < 1) throw Error(Errc::InvariantError, "empty data matrix");
  if (!data.allFinite()) throw Error(Errc::InvariantError, "non-finite coordinate");
  if (labellings.empty()) throw Error(Errc::InvariantError, "no reference labelling");
  for (const auto& l : labellings) {
    if (l.size() != data.rows()) {
      throw Error(Errc::InvariantError, "labelling length " + std::to_string(l.size()) +
                                            " != n = " + std::to_string(data.rows()));
    }
    if (validate_labelling(l.labels) != l.n_clusters) {
      throw Error(Errc::InvariantError, "n_clusters does not match max(labels)");
    }
  }
  BenchmarkDataset out;
  out.battery_ = std::move(battery);
  out.dataset_ = std::move(dataset);
  out.data_ = std::move(data);
  out.labellings_ = std::move(labellings);
  return out;
}

std::vector<int> BenchmarkDataset::n_clusters() const {
  std::vector<int> ks;
  ks.reserve(labellings_.size());
  for (const auto& l : labellings_) ks.push_back(l.n_clusters);
  return ks;
}

std::vector<int> BenchmarkDataset::distinct_ks() const {
  auto ks = n_clusters();
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

std::vector<std::string> list_datasets(const fs::path& data_root, const std::string& battery) {
  std::set<std::string> names;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(data_root / battery, ec)) {
    if (!entry.is_regular_file(ec)) continue;
    if (auto name = dataset_name_of(entry.path())) names.insert(*name);
  }
  return {names.begin(), names.end()};
}

std::vector<std::string> list_batteries(const fs::path& data_root) {
  std::error_code ec;
  if (!fs::is_directory(data_root, ec)) {
    throw Error(Errc::MissingRoot, "data root not found: " + data_root.string());
  }
  std::vector<std::string> out;
  for (const auto& entry : fs::directory_iterator(data_root, ec)) {
    if (!entry.is_directory(ec)) continue;
    auto name = entry.path().filename().string();
    if (is_valid_name(name) && !list_datasets(data_root, name).empty()) out.push_back(name);
  }
  if (ec) throw Error(Errc::IoError, "cannot list " + data_root.string());
  std::sort(out.begin(), out.end());
  return out;
}

PointMatrix<double> parse_data_text(std::string_view text, const std::string& source) {
  std::vector<double> values;
  Eigen::Index dim = -1;
  Eigen::Index rows = 0;
  io::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (is_skippable(line)) return;
    Eigen::Index fields = 0;
    for_each_field(line, [&](std::string_view field) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw Error(Errc::ParseError, where(source, line_no) + ": malformed number '" +
                                          std::string(field.substr(0, 32)) + "'");
      }
      if (!std::isfinite(v)) throw Error(Errc::ParseError, where(source, line_no) + ": non-finite value");
      values.push_back(v);
      ++fields;
    });
    if (dim < 0) dim = fields;
    if (fields != dim) {
      throw Error(Errc::ParseError, where(source, line_no) + ": ragged row (" + std::to_string(fields) +
                                        " fields, expected " + std::to_string(dim) + ")");
    }
    ++rows;
  });
  if (rows == 0) throw Error(Errc::ParseError, source + ": no data rows");
  PointMatrix<double> data(rows, dim);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) data(i, j) = values[static_cast<std::size_t>(i * dim + j)];
  return data;
}

Labels parse_labels_text(std::string_view text, const std::string& source) {
  std::vector<int> values;
  io::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (is_skippable(line)) return;
    int fields = 0;
    for_each_field(line, [&](std::string_view field) {
      int v = 0;
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw Error(Errc::ParseError, where(source, line_no) + ": malformed label '" +
                                          std::string(field.substr(0, 32)) + "'");
      }
      values.push_back(v);
      ++fields;
    });
    if (fields != 1) throw Error(Errc::ParseError, where(source, line_no) + ": expected one label per line");
  });
  return Eigen::Map<const Labels>(values.data(), static_cast<Eigen::Index>(values.size()));
}

std::string format_data_text(const PointMatrix<double>& data) {
  std::string out;
  char buf[32];
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.cols(); ++j) {
      if (j > 0) out.push_back(' ');
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), data(i, j));
      out.append(buf, ptr);
    }
    out.push_back('\n');
  }
  return out;
}

std::string format_labels_text(const Eigen::Ref<const Labels>& labels) {
  std::string out;
  out.reserve(static_cast<std::size_t>(labels.size()) * 3);
  for (Eigen::Index i = 0; i < labels.size(); ++i) {
    out += std::to_string(labels[i]);
    out.push_back('\n');
  }
  return out;
}

BenchmarkDataset load_dataset(const fs::path& data_root, const std::string& battery,
                              const std::string& dataset) {
  if (!is_valid_name(battery) || !is_valid_name(dataset)) {
    throw Error(Errc::BadArgument, "invalid dataset name '" + battery + "/" + dataset + "'");
  }
  std::error_code ec;
  if (!fs::is_directory(data_root, ec)) {
    throw Error(Errc::MissingRoot, "data root not found: " + data_root.string());
  }
  const auto data_file = find_file(stem_path(data_root, battery, dataset, ".data"));
  const auto labels0 = find_file(stem_path(data_root, battery, dataset, ".labels0"));
  if (!data_file || !labels0) {
    throw Error(Errc::MissingDataset, battery + "/" + dataset + " not found under " + data_root.string());
  }

  auto data = parse_data_text(io::read_maybe_gzip(*data_file), data_file->string());

  std::vector<ReferenceLabelling> labellings;
  for (int j = 0;; ++j) {
    auto file = find_file(stem_path(data_root, battery, dataset, ".labels" + std::to_string(j)));
    if (!file) break;
    auto labels = parse_labels_text(io::read_maybe_gzip(*file), file->string());
    if (labels.size() != data.rows()) {
      throw Error(Errc::LabelError, file->string() + ": " + std::to_string(labels.size()) +
                                        " labels for " + std::to_string(data.rows()) + " points");
    }
    try {
      labellings.push_back(ReferenceLabelling::from_labels(std::move(labels)));
    } catch (const Error& e) {
      throw Error(Errc::LabelError, file->string() + ": " + e.what());
    }
  }
  return BenchmarkDataset::make(battery, dataset, std::move(data), std::move(labellings));
}

void save_dataset(const fs::path& data_root, const BenchmarkDataset& dataset) {
  if (!dataset.data().allFinite()) throw Error(Errc::InvariantError, "non-finite coordinate");
  const auto& b = dataset.battery();
  const auto& d = dataset.dataset();
  io::write_gzip(stem_path(data_root, b, d, ".data.gz"), format_data_text(dataset.data()));
  const auto& ls = dataset.labellings();
  for (std::size_t j = 0; j < ls.size(); ++j) {
    io::write_gzip(stem_path(data_root, b, d, ".labels" + std::to_string(j) + ".gz"),
                   format_labels_text(ls[j].labels));
  }
  // Stale labellings from an earlier save would otherwise be picked up on load.
  for (auto j = ls.size();; ++j) {
    auto stale = find_file(stem_path(data_root, b, d, ".labels" + std::to_string(j)));
    if (!stale) break;
    std::error_code ec;
    fs::remove(*stale, ec);
    if (ec) throw Error(Errc::IoError, "cannot remove " + stale->string());
  }
}

}  // namespace clubench
