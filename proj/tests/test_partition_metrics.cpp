#include <gtest/gtest.h>

#include <random>

#include "clubench/error.hpp"
#include "clubench/partition_metrics.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace clubench;
using testing_util::labels;

namespace {

ConfusionMatrix cm(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  Counts c(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (auto v : r) c(i, j++) = v;
    ++i;
  }
  return ConfusionMatrix(c);
}

Counts random_counts(std::mt19937_64& rng, int rows, int cols, int max_count) {
  std::uniform_int_distribution<std::int64_t> u(0, max_count);
  Counts c(rows, cols);
  for (Eigen::Index i = 0; i < c.size(); ++i) c.data()[i] = u(rng);
  for (int i = 0; i < rows; ++i)
    if (c.row(i).sum() == 0) c(i, i % cols) = 1;
  return c;
}

std::vector<int> expand(const Labels& l) { return {l.data(), l.data() + l.size()}; }

}  // namespace

// confusion_matrix

TEST(ConfusionMatrix, Identity) {
  auto c = confusion_matrix(labels({1, 1, 2, 2}), labels({1, 1, 2, 2}));
  EXPECT_EQ(c.counts(), cm({{2, 0}, {0, 2}}).counts());
}

TEST(ConfusionMatrix, Swap) {
  auto c = confusion_matrix(labels({1, 1, 2, 2}), labels({2, 2, 1, 1}));
  EXPECT_EQ(c.counts(), cm({{0, 2}, {2, 0}}).counts());
}

TEST(ConfusionMatrix, HandCounted) {
  auto c = confusion_matrix(labels({1, 2, 1, 2, 2}), labels({1, 1, 2, 2, 2}));
  EXPECT_EQ(c.counts(), cm({{1, 1}, {1, 2}}).counts());
  EXPECT_EQ(c.total(), 5);
  EXPECT_EQ(c.row_sums(), (CountVector(2) << 2, 3).finished());
}

TEST(ConfusionMatrix, Errors) {
  EXPECT_THROW(confusion_matrix(labels({1, 2}), labels({1, 2, 2})), Error);
  try {
    confusion_matrix(labels({1, 3}), labels({1, 2}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::LabelError);
  }
  try {
    confusion_matrix(labels({1, 2}), labels({1, 2, 2}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::LengthMismatch);
  }
  EXPECT_THROW(confusion_matrix(labels({0, 1}), labels({1, 2})), Error);
}

TEST(ConfusionMatrix, FixedShapeKeepsEmptyColumns) {
  auto c = confusion_matrix(labels({1, 2}), labels({1, 1}), 2, 3);
  EXPECT_EQ(c.n_predicted(), 3);
  EXPECT_EQ(c.col_sums(), (CountVector(3) << 2, 0, 0).finished());
}

// solve_assignment

TEST(SolveAssignment, Identity) {
  Eigen::Matrix2d w;
  w << 1, 0, 0, 1;
  auto a = solve_assignment(w);
  EXPECT_EQ(a.sigma.mapping, (std::vector<int>{0, 1}));
  EXPECT_EQ(a.total, 2.0);
}

TEST(SolveAssignment, Swap) {
  Eigen::Matrix2d w;
  w << 0, 1, 1, 0;
  auto a = solve_assignment(w);
  EXPECT_EQ(a.sigma.mapping, (std::vector<int>{1, 0}));
  EXPECT_EQ(a.total, 2.0);
}

TEST(SolveAssignment, MatchesExhaustiveSearchOn5x5Integers) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> u(-20, 20);
  for (int trial = 0; trial < 300; ++trial) {
    Eigen::MatrixXd w(5, 5);
    for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = u(rng);
    auto a = solve_assignment(w);
    EXPECT_EQ(a.total, oracle::best_assignment_total(w));
    // Integer weights sum exactly, so ties are genuine and the lexicographic
    // rule is checkable.
    EXPECT_EQ(a.sigma.mapping, oracle::lexicographic_best_assignment(w)) << w;
  }
}

TEST(SolveAssignment, AllTiesGiveIdentity) {
  auto a = solve_assignment(Eigen::MatrixXd::Ones(6, 6));
  EXPECT_EQ(a.sigma.mapping, (std::vector<int>{0, 1, 2, 3, 4, 5}));
}

TEST(SolveAssignment, WorksForLongDouble) {
  Eigen::Matrix<long double, 3, 3> w;
  w << 1, 5, 1, 5, 1, 1, 1, 1, 5;
  auto a = solve_assignment(w);
  EXPECT_EQ(a.sigma.mapping, (std::vector<int>{1, 0, 2}));
  EXPECT_EQ(a.total, 15.0L);
}

TEST(SolveAssignment, Errors) {
  try {
    solve_assignment(Eigen::MatrixXd::Zero(2, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonSquare);
  }
  Eigen::Matrix2d w;
  w << 1, std::numeric_limits<double>::infinity(), 0, 0;
  try {
    solve_assignment(w);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonFinite);
  }
}

// nca

TEST(Nca, FixedPoints) {
  EXPECT_EQ(nca(cm({{10, 0}, {0, 5}})), 1.0);
  EXPECT_EQ(nca(cm({{5, 5}, {5, 5}})), 0.0);
  EXPECT_NEAR(nca(cm({{9, 1}, {2, 8}})), 0.7, 1e-12);
  EXPECT_NEAR(nca(cm({{5, 0, 0}, {0, 4, 1}, {1, 1, 3}})), 0.7, 1e-12);
  EXPECT_EQ(nca(cm({{0, 3}, {4, 0}})), 1.0);
}

TEST(Nca, FixedPointsAgreeWithEnumeration) {
  EXPECT_NEAR(oracle::nca_by_enumeration((Eigen::Matrix2d() << 9, 1, 2, 8).finished()), 0.7, 1e-12);
  EXPECT_NEAR(
      oracle::nca_by_enumeration((Eigen::Matrix3d() << 5, 0, 0, 0, 4, 1, 1, 1, 3).finished()), 0.7, 1e-12);
}

TEST(Nca, Errors) {
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::BadArgument;
  };
  EXPECT_EQ(code([] { nca(cm({{1, 2, 3}, {1, 2, 3}})); }), Errc::NonSquare);
  EXPECT_EQ(code([] { nca(cm({{0, 0}, {1, 2}})); }), Errc::EmptyRow);
  EXPECT_EQ(code([] { nca(cm({{3}})); }), Errc::BadK);
}

TEST(Nca, MatchingPointsPredictedColumnsAtReferenceRows) {
  EXPECT_EQ(nca_matching(cm({{0, 7, 0}, {0, 0, 3}, {2, 0, 0}})).mapping, (std::vector<int>{2, 0, 1}));
}

TEST(NcaProperty, RangeAndDiagonalIff) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int k = 2 + trial % 6;
    ConfusionMatrix c(random_counts(rng, k, k, 20));
    const double s = nca(c);
    EXPECT_GE(s, -1.0 / (k - 1) - 1e-15);
    EXPECT_LE(s, 1.0 + 1e-15);
    // 1 exactly when some column permutation leaves only diagonal entries.
    const auto sigma = nca_matching(c);
    bool diagonal = true;
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < k; ++i)
        if (i != sigma(j) && c.counts()(i, j) != 0) diagonal = false;
    EXPECT_EQ(s == 1.0, diagonal);
  }
}

TEST(NcaProperty, RowScaleInvariance) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> factor(2, 9);
  for (int trial = 0; trial < 300; ++trial) {
    const int k = 2 + trial % 5;
    Counts c = random_counts(rng, k, k, 30);
    Counts scaled = c;
    scaled.row(trial % k) *= factor(rng);
    EXPECT_NEAR(nca(ConfusionMatrix(c)), nca(ConfusionMatrix(scaled)), 1e-12);
  }
}

TEST(MetricsProperty, RowAndColumnPermutationInvariance) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const int k = 2 + trial % 6;
    Counts c = random_counts(rng, k, k, 25);
    Eigen::PermutationMatrix<Eigen::Dynamic> pr(k), pc(k);
    pr.setIdentity();
    pc.setIdentity();
    std::shuffle(pr.indices().data(), pr.indices().data() + k, rng);
    std::shuffle(pc.indices().data(), pc.indices().data() + k, rng);
    ConfusionMatrix a(c), b(Counts(pr * c * pc));
    EXPECT_EQ(nca(a), nca(b));
    EXPECT_EQ(adjusted_rand(a), adjusted_rand(b));
    EXPECT_EQ(normalized_mutual_info(a), normalized_mutual_info(b));
  }
}

TEST(NcaProperty, AgreesWithEnumerationOnRandomMatrices) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = 2 + trial % 6;
    Counts c = random_counts(rng, k, k, 50);
    EXPECT_NEAR(nca(ConfusionMatrix(c)), oracle::nca_by_enumeration(c.cast<double>()), 1e-12);
  }
}

// adjusted_rand

TEST(AdjustedRand, Examples) {
  EXPECT_EQ(adjusted_rand(cm({{2, 0}, {0, 2}})), 1.0);
  EXPECT_EQ(adjusted_rand(cm({{2}, {2}})), 0.0);
  // pair counting over the 10 pairs of y_ref = 11222, y_pred = 12122
  EXPECT_NEAR(adjusted_rand(cm({{1, 1}, {1, 2}})), -0.25, 1e-15);
  EXPECT_NEAR(oracle::adjusted_rand_by_pairs({1, 1, 2, 2, 2}, {1, 2, 1, 2, 2}), -0.25, 1e-15);
}

TEST(AdjustedRand, TooFewPoints) {
  try {
    adjusted_rand(cm({{1, 0}, {0, 0}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::TooFewPoints);
  }
}

TEST(AdjustedRandProperty, SymmetricAndMatchesPairCounting) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 200; ++trial) {
    const int ka = 1 + trial % 4, kb = 2 + trial % 5;
    const auto a = testing_util::random_partition(rng, 40, ka);
    const auto b = testing_util::random_partition(rng, 40, kb);
    const auto c = confusion_matrix(a, b);
    EXPECT_EQ(adjusted_rand(c), adjusted_rand(c.transposed()));
    if (ka > 1) EXPECT_NEAR(adjusted_rand(c), oracle::adjusted_rand_by_pairs(expand(a), expand(b)), 1e-12);
  }
}

// normalized_mutual_info

TEST(Nmi, Examples) {
  EXPECT_EQ(normalized_mutual_info(cm({{3, 0, 0}, {0, 4, 0}, {0, 0, 1}})), 1.0);
  EXPECT_NEAR(normalized_mutual_info(cm({{25, 25}, {25, 25}})), 0.0, 1e-15);
  // H(ref) = H(pred) = -(0.4 ln 0.4 + 0.6 ln 0.6); I from the four cells
  EXPECT_NEAR(normalized_mutual_info(cm({{1, 1}, {1, 2}})), 0.020570659450693015, 1e-15);
  EXPECT_EQ(normalized_mutual_info(cm({{5}})), 1.0);
  EXPECT_EQ(normalized_mutual_info(cm({{2, 3}})), 0.0);
}

TEST(NmiProperty, InUnitInterval) {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 300; ++trial) {
    ConfusionMatrix c(random_counts(rng, 2 + trial % 4, 1 + trial % 6, 10));
    const double v = normalized_mutual_info(c);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0 + 1e-12);
  }
}
