#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <string_view>
#include <tuple>
#include <vector>

#include "clubench/error.hpp"
#include "clubench/relabel.hpp"
#include "clubench/types.hpp"

namespace clubench {

enum class Linkage { single, complete, average };

std::string_view to_string(Linkage linkage);

/// One merge step. Clusters are named by their founder, the smallest point
/// index they contain; `first` < `second`.
template <typename Scalar>
struct Merge {
  Eigen::Index first;
  Eigen::Index second;
  Scalar height;
};

/// The full merge sequence of n points (n - 1 merges, in merge order).
template <typename Scalar>
struct Dendrogram {
  Eigen::Index n_points = 0;
  std::vector<Merge<Scalar>> merges;
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(Eigen::Index n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), Eigen::Index{0});
  }
  Eigen::Index find(Eigen::Index x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      auto& p = parent_[static_cast<std::size_t>(x)];
      p = parent_[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  // Keeps the smaller index as the root, so roots are founders.
  void unite(Eigen::Index a, Eigen::Index b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
  }

 private:
  std::vector<Eigen::Index> parent_;
};

template <typename Derived>
typename Derived::Scalar euclidean(const Eigen::MatrixBase<Derived>& x, Eigen::Index i, Eigen::Index j) {
  return (x.row(i) - x.row(j)).norm();
}

// Prim's algorithm on the implicit complete graph, O(n^2) time, O(n) memory.
template <typename Derived>
std::vector<Merge<typename Derived::Scalar>> minimum_spanning_tree(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = x.rows();
  std::vector<Merge<Scalar>> edges;
  if (n < 2) return edges;
  std::vector<char> in_tree(static_cast<std::size_t>(n), 0);
  std::vector<Scalar> best(static_cast<std::size_t>(n), std::numeric_limits<Scalar>::infinity());
  std::vector<Eigen::Index> from(static_cast<std::size_t>(n), 0);
  Eigen::Index current = 0;
  in_tree[0] = 1;
  for (Eigen::Index step = 1; step < n; ++step) {
    Eigen::Index next = -1;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (in_tree[static_cast<std::size_t>(j)]) continue;
      const Scalar d = euclidean(x, current, j);
      if (d < best[static_cast<std::size_t>(j)]) {
        best[static_cast<std::size_t>(j)] = d;
        from[static_cast<std::size_t>(j)] = current;
      }
      if (next < 0 || best[static_cast<std::size_t>(j)] < best[static_cast<std::size_t>(next)]) next = j;
    }
    in_tree[static_cast<std::size_t>(next)] = 1;
    edges.push_back({from[static_cast<std::size_t>(next)], next, best[static_cast<std::size_t>(next)]});
    current = next;
  }
  return edges;
}

template <typename Derived>
Dendrogram<typename Derived::Scalar> single_linkage_tree(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  auto edges = minimum_spanning_tree(x);
  std::stable_sort(edges.begin(), edges.end(),
                   [](const auto& a, const auto& b) { return a.height < b.height; });

  Dendrogram<Scalar> tree{x.rows(), {}};
  DisjointSets sets(x.rows());
  for (std::size_t lo = 0; lo < edges.size();) {
    std::size_t hi = lo;
    while (hi < edges.size() && edges[hi].height == edges[lo].height) ++hi;
    const Scalar h = edges[lo].height;
    if (hi - lo == 1) {
      auto a = sets.find(edges[lo].first);
      auto b = sets.find(edges[lo].second);
      if (b < a) std::swap(a, b);
      sets.unite(a, b);
      tree.merges.push_back({a, b, h});
      lo = hi;
      continue;
    }
    // A tied run: the MST keeps only some of the point pairs at height h, so
    // collect all of them and merge by smallest (founder, founder) key.
    std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
    for (Eigen::Index i = 0; i < x.rows(); ++i)
      for (Eigen::Index j = i + 1; j < x.rows(); ++j)
        if (sets.find(i) != sets.find(j) && euclidean(x, i, j) == h) pairs.emplace_back(i, j);
    for (std::size_t left = hi - lo; left > 0; --left) {
      std::pair<Eigen::Index, Eigen::Index> pick{-1, -1};
      std::size_t keep = 0;
      for (const auto& [i, j] : pairs) {
        auto a = sets.find(i);
        auto b = sets.find(j);
        if (a == b) continue;
        pairs[keep++] = {i, j};
        std::pair key{std::min(a, b), std::max(a, b)};
        if (pick.first < 0 || key < pick) pick = key;
      }
      pairs.resize(keep);
      sets.unite(pick.first, pick.second);
      tree.merges.push_back({pick.first, pick.second, h});
    }
    lo = hi;
  }
  return tree;
}

// Stored-dissimilarity agglomeration with Lance-Williams updates and cached
// nearest neighbours. Cluster slots are named by their founders.
template <typename Derived>
Dendrogram<typename Derived::Scalar> stored_distance_tree(const Eigen::MatrixBase<Derived>& x,
                                                          Linkage linkage) {
  using Scalar = typename Derived::Scalar;
  using Index = Eigen::Index;
  const Index n = x.rows();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> d(n, n);
  for (Index i = 0; i < n; ++i) {
    d(i, i) = Scalar(0);
    for (Index j = i + 1; j < n; ++j) d(i, j) = d(j, i) = euclidean(x, i, j);
  }

  using Key = std::tuple<Scalar, Index, Index>;
  auto key = [&](Index a, Index b) { return Key{d(a, b), std::min(a, b), std::max(a, b)}; };

  std::vector<char> active(static_cast<std::size_t>(n), 1);
  std::vector<Index> size(static_cast<std::size_t>(n), 1);
  std::vector<Index> nn(static_cast<std::size_t>(n), -1);

  auto refresh = [&](Index a) {
    nn[static_cast<std::size_t>(a)] = -1;
    for (Index b = 0; b < n; ++b) {
      if (b == a || !active[static_cast<std::size_t>(b)]) continue;
      if (nn[static_cast<std::size_t>(a)] < 0 || key(a, b) < key(a, nn[static_cast<std::size_t>(a)]))
        nn[static_cast<std::size_t>(a)] = b;
    }
  };
  for (Index a = 0; a < n; ++a) refresh(a);

  Dendrogram<Scalar> tree{n, {}};
  for (Index step = 1; step < n; ++step) {
    Index a = -1;
    for (Index c = 0; c < n; ++c) {
      if (!active[static_cast<std::size_t>(c)]) continue;
      if (a < 0 || key(c, nn[static_cast<std::size_t>(c)]) < key(a, nn[static_cast<std::size_t>(a)])) a = c;
    }
    const Index b = nn[static_cast<std::size_t>(a)];
    const Index keep = std::min(a, b);
    const Index gone = std::max(a, b);
    tree.merges.push_back({keep, gone, d(keep, gone)});

    const auto n_keep = static_cast<Scalar>(size[static_cast<std::size_t>(keep)]);
    const auto n_gone = static_cast<Scalar>(size[static_cast<std::size_t>(gone)]);
    for (Index c = 0; c < n; ++c) {
      if (!active[static_cast<std::size_t>(c)] || c == keep || c == gone) continue;
      const Scalar merged = linkage == Linkage::complete
                                ? std::max(d(c, keep), d(c, gone))
                                : (n_keep * d(c, keep) + n_gone * d(c, gone)) / (n_keep + n_gone);
      d(c, keep) = d(keep, c) = merged;
    }
    active[static_cast<std::size_t>(gone)] = 0;
    size[static_cast<std::size_t>(keep)] += size[static_cast<std::size_t>(gone)];

    for (Index c = 0; c < n; ++c) {
      if (!active[static_cast<std::size_t>(c)]) continue;
      const Index cur = nn[static_cast<std::size_t>(c)];
      if (c == keep || cur == keep || cur == gone) {
        refresh(c);
      } else if (key(c, keep) < key(c, cur)) {
        nn[static_cast<std::size_t>(c)] = keep;
      }
    }
  }
  return tree;
}

}  // namespace detail

/// Builds the merge sequence under Euclidean distance. Single linkage goes
/// through a minimum spanning tree; complete and average linkage use a
/// stored n x n dissimilarity matrix. Equal-height merges are taken in
/// order of (smaller founder, larger founder).
template <typename Derived>
Dendrogram<typename Derived::Scalar> build_dendrogram(const Eigen::MatrixBase<Derived>& data, Linkage linkage) {
  if (!data.allFinite()) throw Error(Errc::NonFinite, "non-finite coordinate");
  if (linkage == Linkage::single) return detail::single_linkage_tree(data);
  return detail::stored_distance_tree(data, linkage);
}

/// Applies the first n - k merges; labels in first-occurrence order.
template <typename Scalar>
Labels cut_tree(const Dendrogram<Scalar>& tree, int k) {
  if (k < 1 || k > tree.n_points) {
    throw Error(Errc::BadK, "k = " + std::to_string(k) + " outside [1, " + std::to_string(tree.n_points) + "]");
  }
  detail::DisjointSets sets(tree.n_points);
  const auto n_merges = static_cast<std::size_t>(tree.n_points - k);
  for (std::size_t m = 0; m < n_merges; ++m) sets.unite(tree.merges[m].first, tree.merges[m].second);
  Labels roots(tree.n_points);
  for (Eigen::Index i = 0; i < tree.n_points; ++i) roots[i] = static_cast<int>(sets.find(i));
  return relabel_first_occurrence(roots);
}

template <typename Derived>
Labels agglomerative(const Eigen::MatrixBase<Derived>& data, Linkage linkage, int k) {
  if (k < 2 || k > data.rows()) {
    throw Error(Errc::BadK, "k = " + std::to_string(k) + " outside [2, " + std::to_string(data.rows()) + "]");
  }
  return cut_tree(build_dendrogram(data, linkage), k);
}

}  // namespace clubench
