#pragma once

#include "clubench/assignment.hpp"
#include "clubench/types.hpp"

namespace clubench {

/// counts(i, j): points in reference cluster i+1 that were assigned to
/// predicted cluster j+1.
class ConfusionMatrix {
 public:
  /// Throws InvariantError on negative entries or a zero total.
  explicit ConfusionMatrix(Counts counts);

  const Counts& counts() const { return counts_; }
  Eigen::Index n_reference() const { return counts_.rows(); }
  Eigen::Index n_predicted() const { return counts_.cols(); }
  bool is_square() const { return counts_.rows() == counts_.cols(); }

  CountVector row_sums() const { return counts_.rowwise().sum(); }
  CountVector col_sums() const { return counts_.colwise().sum().transpose(); }
  std::int64_t total() const { return counts_.sum(); }

  ConfusionMatrix transposed() const { return ConfusionMatrix(counts_.transpose()); }

 private:
  Counts counts_;
};

/// Both vectors must use contiguous IDs 1..k (k >= 1, no zeros).
ConfusionMatrix confusion_matrix(const Eigen::Ref<const Labels>& y_ref,
                                 const Eigen::Ref<const Labels>& y_pred);

/// Fixed shape k_ref x k_pred; labels only need to lie in range, so clusters
/// without members become zero rows/columns.
ConfusionMatrix confusion_matrix(const Eigen::Ref<const Labels>& y_ref,
                                 const Eigen::Ref<const Labels>& y_pred, int k_ref, int k_pred);

/// Normalised clustering accuracy: the best (over matchings of predicted to
/// reference clusters) mean per-reference-cluster accuracy, rescaled so that
/// a uniform spread scores 0 and a perfect match scores 1.
///
/// Requires a square matrix with k >= 2 and no empty reference row.
double nca(const ConfusionMatrix& c);

/// The matching realising nca(): mapping[j] is the reference row for
/// predicted column j.
Permutation nca_matching(const ConfusionMatrix& c);

/// Hubert-Arabie adjusted Rand index. 0 when the index is degenerate.
double adjusted_rand(const ConfusionMatrix& c);

/// Mutual information over max(H(ref), H(pred)), natural logs; 1 when both
/// partitions are trivial.
double normalized_mutual_info(const ConfusionMatrix& c);

}  // namespace clubench
