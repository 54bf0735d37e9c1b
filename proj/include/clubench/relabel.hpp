#pragma once

#include <unordered_map>

#include "clubench/types.hpp"

namespace clubench {

/// Renumbers clusters 1, 2, ... in order of first appearance.
inline Labels relabel_first_occurrence(const Eigen::Ref<const Labels>& labels) {
  Labels out(labels.size());
  std::unordered_map<int, int> ids;
  for (Eigen::Index i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = ids.try_emplace(labels[i], static_cast<int>(ids.size()) + 1);
    out[i] = it->second;
  }
  return out;
}

}  // namespace clubench
