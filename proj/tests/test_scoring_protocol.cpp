#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "clubench/benchmark_data.hpp"
#include "clubench/error.hpp"
#include "clubench/scoring_protocol.hpp"
#include "test_util.hpp"

using namespace clubench;
using testing_util::labels;

namespace {

ReferenceLabelling ref(std::initializer_list<int> v) { return ReferenceLabelling::from_labels(labels(v)); }

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no clubench::Error thrown";
  return Errc::BadArgument;
}

constexpr MetricId kAllMetrics[] = {MetricId::nca, MetricId::adjusted_rand, MetricId::nmi};

}  // namespace

TEST(FilterNoise, DropsNoiseIndices) {
  auto s = filter_noise(ref({0, 1, 2, 1}), labels({3, 1, 2, 1}));
  EXPECT_EQ(s.reference, labels({1, 2, 1}));
  EXPECT_EQ(s.predicted, labels({1, 2, 1}));
}

TEST(FilterNoise, IdentityWithoutNoise) {
  auto s = filter_noise(ref({1, 2, 2}), labels({2, 1, 1}));
  EXPECT_EQ(s.reference, labels({1, 2, 2}));
  EXPECT_EQ(s.predicted, labels({2, 1, 1}));
}

TEST(FilterNoise, AllNoiseAndLengthMismatch) {
  // A labelling that is entirely noise cannot be a ReferenceLabelling, so
  // build one by hand to reach the guard.
  ReferenceLabelling all_noise{labels({0, 0}), 2};
  EXPECT_EQ(code_of([&] { filter_noise(all_noise, labels({1, 2})); }), Errc::AllNoise);
  EXPECT_EQ(code_of([&] { filter_noise(ref({1, 2}), labels({1, 2, 2})); }), Errc::LengthMismatch);
}

TEST(ScoreOne, PerfectPredictionScoresOneForEveryMetric) {
  for (auto m : kAllMetrics) EXPECT_EQ(score_one(ref({1, 1, 2, 3, 3}), labels({1, 1, 2, 3, 3}), m), 1.0);
}

TEST(ScoreOne, NoiseDroppedBeforeMatching) {
  EXPECT_EQ(score_one(ref({1, 1, 2, 2, 0}), labels({2, 2, 1, 1, 1}), MetricId::nca), 1.0);
}

TEST(ScoreOne, EmptyPredictedColumnAfterFilteringIsKept) {
  // predicted cluster 3 only holds a noise point
  auto c = scoring_confusion(ref({1, 2, 3, 0, 3}), labels({1, 2, 1, 3, 2}));
  EXPECT_EQ(c.n_predicted(), 3);
  EXPECT_EQ(c.col_sums()[2], 0);
  EXPECT_NO_THROW(score_one(ref({1, 2, 3, 0, 3}), labels({1, 2, 1, 3, 2}), MetricId::nca));
}

TEST(ScoreOne, Errors) {
  EXPECT_EQ(code_of([] { score_one(ref({1, 1, 2, 2}), labels({1, 2, 3, 3}), MetricId::nca); }), Errc::KMismatch);
  EXPECT_NO_THROW(score_one(ref({1, 1, 2, 2}), labels({1, 2, 3, 3}), MetricId::adjusted_rand));
  EXPECT_EQ(code_of([] { score_one(ref({1, 1, 2, 2}), labels({1, 0, 2, 2}), MetricId::nca); }), Errc::LabelError);
  EXPECT_EQ(code_of([] { score_one(ref({1, 1, 2, 2}), labels({1, 3, 3, 3}), MetricId::nca); }), Errc::LabelError);
}

TEST(PartitionSet, Invariants) {
  PartitionSet p(4);
  p.insert(labels({1, 1, 2, 2}));
  EXPECT_EQ(code_of([&] { p.insert(labels({2, 2, 1, 1})); }), Errc::BadK);
  EXPECT_EQ(code_of([&] { p.insert(labels({1, 1, 1, 1})); }), Errc::BadK);
  EXPECT_EQ(code_of([&] { p.insert(labels({1, 2, 3})); }), Errc::LengthMismatch);
  EXPECT_EQ(code_of([&] { p.insert(labels({1, 3, 3, 1})); }), Errc::LabelError);
  EXPECT_EQ(p.ks(), (std::vector<int>{2}));
  EXPECT_EQ(code_of([&] { p.at(3); }), Errc::MissingK);
}

TEST(GetScore, MaxOverLabellingsAndDetail) {
  std::vector<ReferenceLabelling> refs{ref({1, 1, 2, 2, 3, 3}), ref({1, 1, 1, 2, 2, 2})};
  PartitionSet p(6);
  p.insert(labels({1, 1, 2, 2, 2, 3}));
  p.insert(labels({2, 2, 2, 1, 1, 1}));
  const auto d = get_score_detail(refs, p, MetricId::nca);
  EXPECT_EQ(d.score, 1.0);
  EXPECT_EQ(d.labelling, 1u);
  EXPECT_EQ(d.k, 2);
  EXPECT_LT(score_one(refs[0], p.at(3), MetricId::nca), 1.0);
}

TEST(GetScore, SingleLabellingPerfect) {
  PartitionSet p(3);
  p.insert(labels({1, 2, 2}));
  EXPECT_EQ(get_score({ref({1, 2, 2})}, p), 1.0);
}

TEST(GetScore, MissingK) {
  PartitionSet p(4);
  p.insert(labels({1, 1, 2, 2}));
  EXPECT_EQ(code_of([&] { get_score({ref({1, 1, 2, 2}), ref({1, 2, 3, 3})}, p); }), Errc::MissingK);
}

TEST(GetScore, SameKLabellingsShareOnePartition) {
  PartitionSet p(4);
  p.insert(labels({1, 1, 2, 2}));
  EXPECT_EQ(get_score({ref({1, 2, 1, 2}), ref({2, 2, 1, 1})}, p), 1.0);
}

TEST(Metric, ParseAndName) {
  EXPECT_EQ(parse_metric("nca"), MetricId::nca);
  EXPECT_EQ(parse_metric("ari"), MetricId::adjusted_rand);
  EXPECT_EQ(to_string(parse_metric("nmi")), "nmi");
  EXPECT_EQ(code_of([] { parse_metric("f1"); }), Errc::BadArgument);
}

// Properties on random partitions with noise.

TEST(ScoringProperty, MaxRuleDominatesEveryLabelling) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<ReferenceLabelling> refs;
    PartitionSet p(60);
    for (int k : {2, 3, 5}) {
      auto l = testing_util::random_partition(rng, 60, k);
      for (int i = 0; i < 60; i += 7) l[i] = 0;
      refs.push_back(ReferenceLabelling::from_labels(l));
      p.insert(testing_util::random_partition(rng, 60, k));
    }
    for (auto m : kAllMetrics) {
      const double best = get_score(refs, p, m);
      bool attained = false;
      for (const auto& r : refs) {
        const double s = score_one(r, p.at(r.n_clusters), m);
        EXPECT_GE(best, s);
        attained |= s == best;
      }
      EXPECT_TRUE(attained);
    }
  }
}

TEST(ScoringProperty, NoiseIndifferenceAndRelabellingInvariance) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 2 + trial % 5;
    auto l = testing_util::random_partition(rng, 50, k);
    for (int i = 1; i < 50; i += 6) l[i] = 0;
    if (validate_labelling(l) != k) continue;
    const auto r = ReferenceLabelling::from_labels(l);
    const auto pred = testing_util::random_partition(rng, 50, k);

    Labels noisy_edit = pred;
    std::uniform_int_distribution<int> any(1, k);
    for (int i = 1; i < 50; i += 6) noisy_edit[i] = any(rng);
    if (validate_labelling(noisy_edit) != k) continue;

    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    Labels relabelled = pred.unaryExpr([&](int v) { return perm[static_cast<std::size_t>(v - 1)]; });

    for (auto m : kAllMetrics) {
      EXPECT_EQ(score_one(r, pred, m), score_one(r, noisy_edit, m));
      EXPECT_EQ(score_one(r, pred, m), score_one(r, relabelled, m)) << to_string(m) << " trial " << trial;
    }
  }
}
