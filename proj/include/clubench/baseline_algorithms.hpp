#pragma once

#include <algorithm>
#include <string>
#include <variant>
#include <vector>

#include "clubench/agglomerative.hpp"
#include "clubench/kmeans.hpp"
#include "clubench/scoring_protocol.hpp"

namespace clubench {

struct KMeansMethod {
  KMeansConfig config;
};

struct AgglomerativeMethod {
  Linkage linkage = Linkage::single;
};

/// A built-in clusterer.
using Clusterer = std::variant<KMeansMethod, AgglomerativeMethod>;

/// Method identifier used in results trees: "KMeans", "Single", ...
std::string method_id(const Clusterer& clusterer);

/// Builds a clusterer from a CLI name: kmeans, single, complete, average.
/// Throws BadArgument.
Clusterer make_clusterer(const std::string& name, std::uint64_t seed);

namespace detail {

inline void check_ks(const std::vector<int>& ks, Eigen::Index n) {
  if (ks.empty()) throw Error(Errc::BadK, "no cluster counts requested");
  auto sorted = ks;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(Errc::BadK, "duplicate cluster count requested");
  }
  if (sorted.front() < 2 || sorted.back() > n) {
    throw Error(Errc::BadK, "cluster counts must lie in [2, " + std::to_string(n) + "]");
  }
}

}  // namespace detail

/// One partition per requested k. Hierarchical methods build one tree and
/// cut it at every k, so their partitions are nested.
template <typename Derived>
PartitionSet fit_predict_many(const Clusterer& clusterer, const Eigen::MatrixBase<Derived>& data,
                              const std::vector<int>& ks) {
  detail::check_ks(ks, data.rows());
  PartitionSet out(data.rows());
  std::visit(
      [&](const auto& method) {
        using T = std::decay_t<decltype(method)>;
        if constexpr (std::is_same_v<T, KMeansMethod>) {
          for (int k : ks) out.insert(kmeans(data, k, method.config));
        } else {
          const auto tree = build_dendrogram(data, method.linkage);
          for (int k : ks) out.insert(cut_tree(tree, k));
        }
      },
      clusterer);
  return out;
}

}  // namespace clubench
