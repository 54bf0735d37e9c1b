#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "clubench/types.hpp"

namespace clubench {

/// An expert partition of a dataset. Label 0 marks noise; clusters are
/// numbered 1..n_clusters and none of them is empty.
struct ReferenceLabelling {
  Labels labels;
  int n_clusters = 0;

  /// Validates `labels` and derives n_clusters; throws LabelError.
  static ReferenceLabelling from_labels(Labels labels);

  Eigen::Index size() const { return labels.size(); }
  bool has_noise() const { return (labels.array() == 0).any(); }
};

/// A point cloud addressed as "battery/dataset" together with its reference
/// labellings. Instances are immutable once constructed through make().
class BenchmarkDataset {
 public:
  /// Checks every invariant (finite coordinates, matching lengths, name
  /// charset); throws InvariantError.
  static BenchmarkDataset make(std::string battery, std::string dataset,
                               PointMatrix<double> data,
                               std::vector<ReferenceLabelling> labellings);

  const std::string& battery() const { return battery_; }
  const std::string& dataset() const { return dataset_; }
  std::string qualified_name() const { return battery_ + "/" + dataset_; }

  const PointMatrix<double>& data() const { return data_; }
  Eigen::Index n_points() const { return data_.rows(); }
  Eigen::Index dim() const { return data_.cols(); }

  const std::vector<ReferenceLabelling>& labellings() const { return labellings_; }
  /// n_clusters of every labelling, in labelling order (may repeat).
  std::vector<int> n_clusters() const;
  /// Distinct cluster counts, ascending.
  std::vector<int> distinct_ks() const;

 private:
  BenchmarkDataset() = default;

  std::string battery_;
  std::string dataset_;
  PointMatrix<double> data_;
  std::vector<ReferenceLabelling> labellings_;
};

/// Returns k = max(labels) when 0..k covers labels, each of 1..k occurs and
/// k >= 2. Throws LabelError naming the violated rule otherwise.
int validate_labelling(const Eigen::Ref<const Labels>& labels);

/// Battery and dataset names: [a-z0-9_]+.
bool is_valid_name(std::string_view name);

std::vector<std::string> list_batteries(const std::filesystem::path& data_root);
std::vector<std::string> list_datasets(const std::filesystem::path& data_root,
                                       const std::string& battery);

BenchmarkDataset load_dataset(const std::filesystem::path& data_root,
                              const std::string& battery, const std::string& dataset);

/// Writes <battery>/<dataset>.data.gz and .labels<j>.gz under data_root.
void save_dataset(const std::filesystem::path& data_root, const BenchmarkDataset& dataset);

// Text codecs shared by the loader, the saver and the external-method bridge.
PointMatrix<double> parse_data_text(std::string_view text, const std::string& source);
Labels parse_labels_text(std::string_view text, const std::string& source);
std::string format_data_text(const PointMatrix<double>& data);
std::string format_labels_text(const Eigen::Ref<const Labels>& labels);

}  // namespace clubench
