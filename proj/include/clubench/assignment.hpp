#pragma once

#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "clubench/error.hpp"

namespace clubench {

/// A bijection of {0..k-1}; mapping[j] is the row matched to column j.
struct Permutation {
  std::vector<int> mapping;

  int size() const { return static_cast<int>(mapping.size()); }
  int operator()(int column) const { return mapping[static_cast<std::size_t>(column)]; }
  /// inverse()[row] is the column matched to that row.
  std::vector<int> inverse() const {
    std::vector<int> inv(mapping.size());
    for (std::size_t j = 0; j < mapping.size(); ++j) inv[static_cast<std::size_t>(mapping[j])] = static_cast<int>(j);
    return inv;
  }
  friend bool operator==(const Permutation&, const Permutation&) = default;
};

template <typename Scalar>
struct Assignment {
  Permutation sigma;
  Scalar total{};
};

namespace detail {

// Shortest augmenting path Hungarian method, O(k^3). Minimises
// sum_j cost(col_j, row) over bijections; returns row for each column.
template <typename Scalar>
std::vector<int> hungarian_min(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& cost) {
  const int n = static_cast<int>(cost.rows());  // columns of the weight matrix ("workers")
  const Scalar inf = std::numeric_limits<Scalar>::infinity();
  std::vector<Scalar> u(n + 1, Scalar(0)), v(n + 1, Scalar(0)), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);

  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      Scalar delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const Scalar cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> row_of(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) row_of[static_cast<std::size_t>(p[j] - 1)] = j - 1;
  return row_of;
}

template <typename Derived>
typename Derived::Scalar assignment_total(const Eigen::MatrixBase<Derived>& w,
                                          const std::vector<int>& mapping) {
  typename Derived::Scalar total(0);
  for (std::size_t j = 0; j < mapping.size(); ++j) total += w(mapping[j], static_cast<Eigen::Index>(j));
  return total;
}

// Best completion of `mapping` whose first `fixed` columns are pinned.
template <typename Derived>
std::vector<int> complete_assignment(const Eigen::MatrixBase<Derived>& w, std::vector<int> mapping,
                                     int fixed) {
  using Scalar = typename Derived::Scalar;
  const int k = static_cast<int>(w.rows());
  std::vector<char> row_taken(static_cast<std::size_t>(k), 0);
  for (int j = 0; j < fixed; ++j) row_taken[static_cast<std::size_t>(mapping[static_cast<std::size_t>(j)])] = 1;
  std::vector<int> free_rows;
  for (int r = 0; r < k; ++r)
    if (!row_taken[static_cast<std::size_t>(r)]) free_rows.push_back(r);

  const int m = k - fixed;
  if (m == 0) return mapping;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> cost(m, m);
  for (int c = 0; c < m; ++c)
    for (int r = 0; r < m; ++r) cost(c, r) = -w(free_rows[static_cast<std::size_t>(r)], fixed + c);
  const auto sub = hungarian_min<Scalar>(cost);
  for (int c = 0; c < m; ++c)
    mapping[static_cast<std::size_t>(fixed + c)] = free_rows[static_cast<std::size_t>(sub[static_cast<std::size_t>(c)])];
  return mapping;
}

}  // namespace detail

/// Maximum-weight perfect matching of columns to rows:
/// sigma maximises sum_j weights(sigma(j), j).
///
/// Among assignments whose totals compare exactly equal, the one with the
/// lexicographically smallest mapping is returned. Throws NonSquare or
/// NonFinite.
template <typename Derived>
Assignment<typename Derived::Scalar> solve_assignment(const Eigen::MatrixBase<Derived>& weights) {
  using Scalar = typename Derived::Scalar;
  static_assert(!Eigen::NumTraits<Scalar>::IsInteger, "use a floating-point weight matrix");
  if (weights.rows() != weights.cols()) {
    throw Error(Errc::NonSquare, "assignment needs a square matrix, got " + std::to_string(weights.rows()) +
                                     "x" + std::to_string(weights.cols()));
  }
  if (!weights.allFinite()) throw Error(Errc::NonFinite, "non-finite assignment weight");
  const int k = static_cast<int>(weights.rows());
  if (k == 0) return {};

  std::vector<int> best = detail::complete_assignment(weights, std::vector<int>(static_cast<std::size_t>(k)), 0);
  Scalar best_total = detail::assignment_total(weights, best);

  // Walk the columns, pinning each to the smallest row that still admits an
  // optimal completion. The incumbent's own row always qualifies.
  for (int j = 0; j + 1 < k; ++j) {
    std::vector<char> taken(static_cast<std::size_t>(k), 0);
    for (int c = 0; c < j; ++c) taken[static_cast<std::size_t>(best[static_cast<std::size_t>(c)])] = 1;
    for (int r = 0; r < best[static_cast<std::size_t>(j)]; ++r) {
      if (taken[static_cast<std::size_t>(r)]) continue;
      auto candidate = best;
      candidate[static_cast<std::size_t>(j)] = r;
      candidate = detail::complete_assignment(weights, std::move(candidate), j + 1);
      const Scalar total = detail::assignment_total(weights, candidate);
      if (total >= best_total) {
        best = std::move(candidate);
        best_total = total;
        break;
      }
    }
  }
  return {Permutation{std::move(best)}, best_total};
}

}  // namespace clubench
