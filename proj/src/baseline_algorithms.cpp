#include "clubench/baseline_algorithms.hpp"

namespace clubench {

std::string_view to_string(Linkage linkage) {
  switch (linkage) {
    case Linkage::single: return "single";
    case Linkage::complete: return "complete";
    case Linkage::average: return "average";
  }
  return "?";
}

std::string method_id(const Clusterer& clusterer) {
  if (std::holds_alternative<KMeansMethod>(clusterer)) return "KMeans";
  switch (std::get<AgglomerativeMethod>(clusterer).linkage) {
    case Linkage::single: return "Single";
    case Linkage::complete: return "Complete";
    case Linkage::average: return "Average";
  }
  return "Agglomerative";
}

Clusterer make_clusterer(const std::string& name, std::uint64_t seed) {
  if (name == "kmeans") {
    KMeansConfig cfg;
    cfg.seed = seed;
    return KMeansMethod{cfg};
  }
  if (name == "single") return AgglomerativeMethod{Linkage::single};
  if (name == "complete") return AgglomerativeMethod{Linkage::complete};
  if (name == "average") return AgglomerativeMethod{Linkage::average};
  throw Error(Errc::BadArgument, "unknown built-in method '" + name + "'");
}

}  // namespace clubench
