#pragma once

#include <map>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "clubench/benchmark_data.hpp"
#include "clubench/partition_metrics.hpp"

namespace clubench {

/// Predicted partitions of one dataset keyed by their cluster count.
class PartitionSet {
 public:
  explicit PartitionSet(Eigen::Index n) : n_(n) {}

  /// Validates contiguity 1..k (k >= 2), length n and key uniqueness;
  /// throws LabelError, LengthMismatch or BadK.
  void insert(Labels labels);

  Eigen::Index n() const { return n_; }
  bool contains(int k) const { return by_k_.count(k) != 0; }
  const Labels& at(int k) const;
  const std::map<int, Labels>& by_k() const { return by_k_; }
  std::vector<int> ks() const;
  bool empty() const { return by_k_.empty(); }

  friend bool operator==(const PartitionSet& a, const PartitionSet& b);

 private:
  Eigen::Index n_;
  std::map<int, Labels> by_k_;
};

enum class MetricId { nca, adjusted_rand, nmi };

std::string_view to_string(MetricId metric);
/// Accepts "nca", "adjusted_rand" (or "ari"), "nmi"; throws BadArgument.
MetricId parse_metric(std::string_view name);

double compute_metric(const ConfusionMatrix& c, MetricId metric);

/// Reference and predicted labels restricted to the non-noise points.
struct Survivors {
  Labels reference;
  Labels predicted;
};

/// Drops every index whose reference label is 0. Throws LengthMismatch or
/// AllNoise.
Survivors filter_noise(const ReferenceLabelling& reference, const Eigen::Ref<const Labels>& y_pred);

/// Confusion matrix of the non-noise points. Its shape is always
/// k_ref x k_pred: predicted clusters that only held noise points stay as
/// zero columns.
ConfusionMatrix scoring_confusion(const ReferenceLabelling& reference,
                                  const Eigen::Ref<const Labels>& y_pred);

double score_one(const ReferenceLabelling& reference, const Eigen::Ref<const Labels>& y_pred,
                 MetricId metric);

struct ScoreDetail {
  double score = 0.0;
  std::size_t labelling = 0;  // index of the first maximising labelling
  int k = 0;
};

/// Max over reference labellings of score_one against the stored partition
/// with the same k. Throws MissingK when a required cardinality is absent.
ScoreDetail get_score_detail(const std::vector<ReferenceLabelling>& labellings,
                             const PartitionSet& predictions, MetricId metric);

inline double get_score(const std::vector<ReferenceLabelling>& labellings,
                        const PartitionSet& predictions, MetricId metric = MetricId::nca) {
  return get_score_detail(labellings, predictions, metric).score;
}

}  // namespace clubench
