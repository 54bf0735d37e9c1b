#include "clubench/partition_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "clubench/error.hpp"

namespace clubench {

namespace {

int contiguous_k(const Eigen::Ref<const Labels>& labels, const char* side) {
  if (labels.size() == 0) throw Error(Errc::LabelError, std::string(side) + " labels are empty");
  if (labels.minCoeff() < 1) throw Error(Errc::LabelError, std::string(side) + " labels must be >= 1");
  const int k = labels.maxCoeff();
  if (k > labels.size()) throw Error(Errc::LabelError, std::string(side) + " labels are not contiguous");
  std::vector<char> seen(static_cast<std::size_t>(k) + 1, 0);
  for (Eigen::Index i = 0; i < labels.size(); ++i) seen[static_cast<std::size_t>(labels[i])] = 1;
  if (std::find(seen.begin() + 1, seen.end(), 0) != seen.end()) {
    throw Error(Errc::LabelError, std::string(side) + " labels are not contiguous");
  }
  return k;
}

// Sums in ascending order so the result depends only on the multiset of terms.
double canonical_sum(std::vector<double>& terms) {
  std::sort(terms.begin(), terms.end());
  return std::accumulate(terms.begin(), terms.end(), 0.0);
}

// Sum of matched[i] / rows[i]. Equal-valued optima reached through different
// matchings must give the same double, so the sum is formed exactly over the
// lcm of the row sums when that fits in 96 bits.
double accuracy_sum(const std::vector<std::int64_t>& matched, const CountVector& rows) {
  using u128 = unsigned __int128;
  constexpr u128 limit = u128{1} << 96;
  u128 lcm = 1;
  for (Eigen::Index i = 0; i < rows.size() && lcm < limit; ++i) {
    const auto r = static_cast<u128>(rows[i]);
    const u128 step = lcm / std::gcd(static_cast<std::uint64_t>(lcm % r), static_cast<std::uint64_t>(r));
    lcm = r > limit / step ? limit : step * r;
  }
  if (lcm < limit && rows.size() < (1 << 20)) {
    u128 total = 0;
    for (Eigen::Index i = 0; i < rows.size(); ++i)
      total += static_cast<u128>(matched[static_cast<std::size_t>(i)]) * (lcm / static_cast<u128>(rows[i]));
    return static_cast<double>(static_cast<long double>(total) / static_cast<long double>(lcm));
  }
  std::vector<double> terms(matched.size());
  for (std::size_t i = 0; i < matched.size(); ++i)
    terms[i] = static_cast<double>(matched[i]) / static_cast<double>(rows[static_cast<Eigen::Index>(i)]);
  return canonical_sum(terms);
}

std::int64_t pairs(std::int64_t m) { return m * (m - 1) / 2; }

// (x / n) * log(n / x) summed over the nonzero entries.
double entropy(const CountVector& sums, double n) {
  std::vector<double> terms;
  for (Eigen::Index i = 0; i < sums.size(); ++i) {
    if (sums[i] == 0) continue;
    const double x = static_cast<double>(sums[i]);
    terms.push_back((x / n) * std::log(n / x));
  }
  return canonical_sum(terms);
}

Eigen::MatrixXd row_accuracies(const ConfusionMatrix& c) {
  if (!c.is_square()) {
    throw Error(Errc::NonSquare, "nca needs as many predicted as reference clusters (" +
                                     std::to_string(c.n_reference()) + " vs " +
                                     std::to_string(c.n_predicted()) + ")");
  }
  if (c.n_reference() < 2) throw Error(Errc::BadK, "nca needs k >= 2");
  const CountVector rows = c.row_sums();
  if ((rows.array() == 0).any()) throw Error(Errc::EmptyRow, "reference cluster with no points");
  return c.counts().cast<double>().array().colwise() / rows.cast<double>().array();
}

}  // namespace

ConfusionMatrix::ConfusionMatrix(Counts counts) : counts_(std::move(counts)) {
  if (counts_.size() == 0) throw Error(Errc::InvariantError, "empty confusion matrix");
  if (counts_.minCoeff() < 0) throw Error(Errc::InvariantError, "negative count");
  if (counts_.sum() < 1) throw Error(Errc::InvariantError, "confusion matrix with no points");
}

ConfusionMatrix confusion_matrix(const Eigen::Ref<const Labels>& y_ref,
                                 const Eigen::Ref<const Labels>& y_pred) {
  if (y_ref.size() != y_pred.size()) {
    throw Error(Errc::LengthMismatch, std::to_string(y_ref.size()) + " reference vs " +
                                          std::to_string(y_pred.size()) + " predicted labels");
  }
  return confusion_matrix(y_ref, y_pred, contiguous_k(y_ref, "reference"),
                          contiguous_k(y_pred, "predicted"));
}

ConfusionMatrix confusion_matrix(const Eigen::Ref<const Labels>& y_ref,
                                 const Eigen::Ref<const Labels>& y_pred, int k_ref, int k_pred) {
  if (y_ref.size() != y_pred.size()) {
    throw Error(Errc::LengthMismatch, std::to_string(y_ref.size()) + " reference vs " +
                                          std::to_string(y_pred.size()) + " predicted labels");
  }
  if (y_ref.size() == 0) throw Error(Errc::TooFewPoints, "no points to compare");
  Counts counts = Counts::Zero(k_ref, k_pred);
  for (Eigen::Index t = 0; t < y_ref.size(); ++t) {
    const int i = y_ref[t];
    const int j = y_pred[t];
    if (i < 1 || i > k_ref || j < 1 || j > k_pred) {
      throw Error(Errc::LabelError, "label out of range at index " + std::to_string(t));
    }
    ++counts(i - 1, j - 1);
  }
  return ConfusionMatrix(std::move(counts));
}

Permutation nca_matching(const ConfusionMatrix& c) {
  return solve_assignment(row_accuracies(c)).sigma;
}

double nca(const ConfusionMatrix& c) {
  const Eigen::MatrixXd w = row_accuracies(c);
  const auto k = static_cast<double>(w.rows());
  const auto column_of = solve_assignment(w).sigma.inverse();
  std::vector<std::int64_t> matched(column_of.size());
  for (std::size_t i = 0; i < column_of.size(); ++i)
    matched[i] = c.counts()(static_cast<Eigen::Index>(i), column_of[i]);
  const double mean_accuracy = accuracy_sum(matched, c.row_sums()) / k;
  return (mean_accuracy - 1.0 / k) / (1.0 - 1.0 / k);
}

double adjusted_rand(const ConfusionMatrix& c) {
  const std::int64_t n = c.total();
  if (n < 2) throw Error(Errc::TooFewPoints, "adjusted Rand index needs at least 2 points");
  const std::int64_t index = c.counts().unaryExpr([](std::int64_t x) { return pairs(x); }).sum();
  const std::int64_t a = c.row_sums().unaryExpr([](std::int64_t x) { return pairs(x); }).sum();
  const std::int64_t b = c.col_sums().unaryExpr([](std::int64_t x) { return pairs(x); }).sum();
  const double expected = static_cast<double>(a) * static_cast<double>(b) / static_cast<double>(pairs(n));
  const double maximum = (static_cast<double>(a) + static_cast<double>(b)) / 2.0;
  if (maximum == expected) return 0.0;
  return (static_cast<double>(index) - expected) / (maximum - expected);
}

double normalized_mutual_info(const ConfusionMatrix& c) {
  const double n = static_cast<double>(c.total());
  const CountVector rows = c.row_sums();
  const CountVector cols = c.col_sums();
  const double h_ref = entropy(rows, n);
  const double h_pred = entropy(cols, n);
  if (h_ref == 0.0 && h_pred == 0.0) return 1.0;

  std::vector<double> terms;
  for (Eigen::Index i = 0; i < c.n_reference(); ++i) {
    for (Eigen::Index j = 0; j < c.n_predicted(); ++j) {
      const auto cij = c.counts()(i, j);
      if (cij == 0) continue;
      const double x = static_cast<double>(cij);
      const double ratio = (x * n) / (static_cast<double>(rows[i]) * static_cast<double>(cols[j]));
      terms.push_back((x / n) * std::log(ratio));
    }
  }
  const double mutual = std::max(0.0, canonical_sum(terms));
  return mutual / std::max(h_ref, h_pred);
}

}  // namespace clubench
