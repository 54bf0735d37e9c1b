#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "clubench/error.hpp"
#include "clubench/relabel.hpp"
#include "clubench/types.hpp"

namespace clubench {

struct KMeansConfig {
  int n_init = 10;
  int max_iter = 300;
  double tol = 1e-9;  // stop once the relative inertia decrease is at most tol
  std::uint64_t seed = 0;

  void validate() const {
    if (n_init < 1) throw Error(Errc::BadArgument, "n_init must be >= 1");
    if (max_iter < 1) throw Error(Errc::BadArgument, "max_iter must be >= 1");
    if (!(tol >= 0.0)) throw Error(Errc::BadArgument, "tol must be >= 0");
  }
};

template <typename Scalar>
struct KMeansFit {
  Labels labels;                  // 1..k, first-occurrence order
  PointMatrix<Scalar> centers;    // row c is the centroid of cluster c+1
  Scalar inertia{};
  int best_restart = 0;
  /// Inertia after each Lloyd iteration, one trace per restart.
  std::vector<std::vector<Scalar>> inertia_trace;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent stream for restart r of a run seeded with `seed`.
inline std::mt19937_64 restart_engine(std::uint64_t seed, int restart) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(restart)));
}

// Uniform in [0, 1) from the top 53 bits; identical on every platform, which
// std::uniform_real_distribution does not promise.
inline double uniform01(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

template <typename Scalar>
PointMatrix<Scalar> kmeanspp_seed(const PointMatrix<Scalar>& x, int k, std::mt19937_64& engine) {
  const Eigen::Index n = x.rows();
  PointMatrix<Scalar> centers(k, x.cols());
  std::vector<char> chosen(static_cast<std::size_t>(n), 0);

  auto first = static_cast<Eigen::Index>(uniform01(engine) * static_cast<double>(n));
  first = std::min(first, n - 1);
  centers.row(0) = x.row(first);
  chosen[static_cast<std::size_t>(first)] = 1;

  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> d2 = (x.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const Scalar total = d2.sum();
    Eigen::Index pick = -1;
    if (total > Scalar(0)) {
      const Scalar threshold = static_cast<Scalar>(uniform01(engine)) * total;
      Scalar cumulative(0);
      for (Eigen::Index i = 0; i < n; ++i) {
        if (d2[i] <= Scalar(0)) continue;
        cumulative += d2[i];
        pick = i;
        if (cumulative > threshold) break;
      }
    } else {
      // Every point sits on a chosen center; take the next unused index.
      for (Eigen::Index i = 0; i < n && pick < 0; ++i)
        if (!chosen[static_cast<std::size_t>(i)]) pick = i;
    }
    centers.row(c) = x.row(pick);
    chosen[static_cast<std::size_t>(pick)] = 1;
    d2 = d2.cwiseMin((x.rowwise() - centers.row(c)).rowwise().squaredNorm());
  }
  return centers;
}

template <typename Scalar>
struct LloydRun {
  Labels labels;  // 0-based
  PointMatrix<Scalar> centers;
  Scalar inertia{};
  std::vector<Scalar> trace;
};

template <typename Scalar>
LloydRun<Scalar> lloyd(const PointMatrix<Scalar>& x, PointMatrix<Scalar> centers, const KMeansConfig& cfg) {
  const Eigen::Index n = x.rows();
  const auto k = static_cast<int>(centers.rows());
  Labels labels = Labels::Constant(n, -1);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> dist(n);
  std::vector<Eigen::Index> sizes(static_cast<std::size_t>(k));
  LloydRun<Scalar> run;
  Scalar previous = std::numeric_limits<Scalar>::infinity();

  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    bool changed = false;
    std::fill(sizes.begin(), sizes.end(), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::Index best = 0;
      const Scalar best_d = (centers.rowwise() - x.row(i)).rowwise().squaredNorm().minCoeff(&best);
      dist[i] = best_d;
      if (labels[i] != static_cast<int>(best)) {
        labels[i] = static_cast<int>(best);
        changed = true;
      }
      ++sizes[static_cast<std::size_t>(best)];
    }

    // Empty clusters take the point farthest from its centroid.
    for (int c = 0; c < k; ++c) {
      if (sizes[static_cast<std::size_t>(c)] > 0) continue;
      Eigen::Index far = -1;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (sizes[static_cast<std::size_t>(labels[i])] < 2) continue;
        if (far < 0 || dist[i] > dist[far]) far = i;
      }
      --sizes[static_cast<std::size_t>(labels[far])];
      labels[far] = c;
      sizes[static_cast<std::size_t>(c)] = 1;
      dist[far] = Scalar(0);
      changed = true;
    }

    centers.setZero();
    for (Eigen::Index i = 0; i < n; ++i) centers.row(labels[i]) += x.row(i);
    for (int c = 0; c < k; ++c) centers.row(c) /= static_cast<Scalar>(sizes[static_cast<std::size_t>(c)]);

    Scalar inertia(0);
    for (Eigen::Index i = 0; i < n; ++i) inertia += (x.row(i) - centers.row(labels[i])).squaredNorm();
    run.trace.push_back(inertia);

    const bool converged =
        !changed || (iter > 0 && previous - inertia <= static_cast<Scalar>(cfg.tol) * previous);
    previous = inertia;
    if (converged) break;
  }
  run.labels = std::move(labels);
  run.centers = std::move(centers);
  run.inertia = previous;
  return run;
}

}  // namespace detail

/// Lloyd's algorithm with k-means++ seeding, best of config.n_init restarts
/// by inertia (ties go to the lower restart index). Coordinates are centred
/// before fitting. Throws BadK or NonFinite.
template <typename Derived>
KMeansFit<typename Derived::Scalar> kmeans_fit(const Eigen::MatrixBase<Derived>& data, int k,
                                               const KMeansConfig& config = {}) {
  using Scalar = typename Derived::Scalar;
  config.validate();
  if (k < 2 || k > data.rows()) {
    throw Error(Errc::BadK, "k = " + std::to_string(k) + " outside [2, " + std::to_string(data.rows()) + "]");
  }
  if (!data.allFinite()) throw Error(Errc::NonFinite, "non-finite coordinate");

  const Eigen::Matrix<Scalar, 1, Eigen::Dynamic> mean = data.colwise().mean();
  const PointMatrix<Scalar> x = data.rowwise() - mean;

  KMeansFit<Scalar> fit;
  detail::LloydRun<Scalar> best;
  for (int r = 0; r < config.n_init; ++r) {
    auto engine = detail::restart_engine(config.seed, r);
    auto run = detail::lloyd(x, detail::kmeanspp_seed(x, k, engine), config);
    fit.inertia_trace.push_back(run.trace);
    if (r == 0 || run.inertia < best.inertia) {
      best = std::move(run);
      fit.best_restart = r;
    }
  }

  // Reorder centroids to match the first-occurrence numbering.
  fit.labels = relabel_first_occurrence(best.labels);
  fit.centers.resize(k, x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    fit.centers.row(fit.labels[i] - 1) = best.centers.row(best.labels[i]) + mean;
  fit.inertia = best.inertia;
  return fit;
}

template <typename Derived>
Labels kmeans(const Eigen::MatrixBase<Derived>& data, int k, const KMeansConfig& config = {}) {
  return kmeans_fit(data, k, config).labels;
}

}  // namespace clubench
