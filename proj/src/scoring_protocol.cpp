#include "clubench/scoring_protocol.hpp"

#include "clubench/error.hpp"

namespace clubench {

namespace {

int predicted_k(const Eigen::Ref<const Labels>& y_pred) {
  if (y_pred.size() == 0) throw Error(Errc::LabelError, "empty prediction");
  if (y_pred.minCoeff() < 1) {
    throw Error(Errc::LabelError, "predicted labels must be 1..k (noise markers are not allowed)");
  }
  const int k = y_pred.maxCoeff();
  if (k > y_pred.size()) throw Error(Errc::LabelError, "predicted labels are not contiguous");
  std::vector<char> seen(static_cast<std::size_t>(k) + 1, 0);
  for (Eigen::Index i = 0; i < y_pred.size(); ++i) seen[static_cast<std::size_t>(y_pred[i])] = 1;
  for (int c = 1; c <= k; ++c) {
    if (!seen[static_cast<std::size_t>(c)]) {
      throw Error(Errc::LabelError, "predicted label " + std::to_string(c) + " missing");
    }
  }
  return k;
}

}  // namespace

void PartitionSet::insert(Labels labels) {
  if (labels.size() != n_) {
    throw Error(Errc::LengthMismatch, "partition of length " + std::to_string(labels.size()) +
                                          ", expected " + std::to_string(n_));
  }
  const int k = predicted_k(labels);
  if (k < 2) throw Error(Errc::BadK, "partitions need k >= 2");
  if (!by_k_.emplace(k, std::move(labels)).second) {
    throw Error(Errc::BadK, "duplicate partition for k = " + std::to_string(k));
  }
}

const Labels& PartitionSet::at(int k) const {
  auto it = by_k_.find(k);
  if (it == by_k_.end()) throw Error(Errc::MissingK, "no predicted partition with k = " + std::to_string(k));
  return it->second;
}

std::vector<int> PartitionSet::ks() const {
  std::vector<int> out;
  for (const auto& [k, _] : by_k_) out.push_back(k);
  return out;
}

bool operator==(const PartitionSet& a, const PartitionSet& b) {
  if (a.n_ != b.n_ || a.by_k_.size() != b.by_k_.size()) return false;
  for (auto ia = a.by_k_.begin(), ib = b.by_k_.begin(); ia != a.by_k_.end(); ++ia, ++ib) {
    if (ia->first != ib->first || ia->second != ib->second) return false;
  }
  return true;
}

std::string_view to_string(MetricId metric) {
  switch (metric) {
    case MetricId::nca: return "nca";
    case MetricId::adjusted_rand: return "adjusted_rand";
    case MetricId::nmi: return "nmi";
  }
  return "?";
}

MetricId parse_metric(std::string_view name) {
  if (name == "nca") return MetricId::nca;
  if (name == "adjusted_rand" || name == "ari") return MetricId::adjusted_rand;
  if (name == "nmi") return MetricId::nmi;
  throw Error(Errc::BadArgument, "unknown metric '" + std::string(name) + "'");
}

double compute_metric(const ConfusionMatrix& c, MetricId metric) {
  switch (metric) {
    case MetricId::nca: return nca(c);
    case MetricId::adjusted_rand: return adjusted_rand(c);
    case MetricId::nmi: return normalized_mutual_info(c);
  }
  throw Error(Errc::BadArgument, "unknown metric");
}

Survivors filter_noise(const ReferenceLabelling& reference, const Eigen::Ref<const Labels>& y_pred) {
  if (reference.size() != y_pred.size()) {
    throw Error(Errc::LengthMismatch, std::to_string(reference.size()) + " reference vs " +
                                          std::to_string(y_pred.size()) + " predicted labels");
  }
  const Eigen::Index kept = (reference.labels.array() != 0).count();
  if (kept == 0) throw Error(Errc::AllNoise, "every reference point is noise");
  Survivors out{Labels(kept), Labels(kept)};
  for (Eigen::Index i = 0, t = 0; i < y_pred.size(); ++i) {
    if (reference.labels[i] == 0) continue;
    out.reference[t] = reference.labels[i];
    out.predicted[t] = y_pred[i];
    ++t;
  }
  return out;
}

ConfusionMatrix scoring_confusion(const ReferenceLabelling& reference,
                                  const Eigen::Ref<const Labels>& y_pred) {
  const int k_pred = predicted_k(y_pred);
  const auto survivors = filter_noise(reference, y_pred);
  return confusion_matrix(survivors.reference, survivors.predicted, reference.n_clusters, k_pred);
}

double score_one(const ReferenceLabelling& reference, const Eigen::Ref<const Labels>& y_pred,
                 MetricId metric) {
  auto c = scoring_confusion(reference, y_pred);
  if (metric == MetricId::nca && c.n_predicted() != reference.n_clusters) {
    throw Error(Errc::KMismatch, "nca compares equal cluster counts; reference k = " +
                                     std::to_string(reference.n_clusters) +
                                     ", predicted k = " + std::to_string(c.n_predicted()));
  }
  return compute_metric(c, metric);
}

ScoreDetail get_score_detail(const std::vector<ReferenceLabelling>& labellings,
                             const PartitionSet& predictions, MetricId metric) {
  if (labellings.empty()) throw Error(Errc::MissingLabels, "no reference labellings");
  std::optional<ScoreDetail> best;
  for (std::size_t j = 0; j < labellings.size(); ++j) {
    const auto& ref = labellings[j];
    const double s = score_one(ref, predictions.at(ref.n_clusters), metric);
    if (!best || s > best->score) best = ScoreDetail{s, j, ref.n_clusters};
  }
  return *best;
}

}  // namespace clubench
