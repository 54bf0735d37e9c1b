#include <gtest/gtest.h>

#include "clubench/error.hpp"
#include "clubench/gzip_io.hpp"
#include "clubench/results_store.hpp"
#include "test_util.hpp"

using namespace clubench;
using testing_util::labels;

namespace {

PartitionSet sample() {
  PartitionSet p(6);
  p.insert(labels({1, 1, 2, 2, 3, 3}));
  p.insert(labels({1, 2, 3, 4, 4, 4}));
  return p;
}

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no clubench::Error thrown";
  return Errc::BadArgument;
}

}  // namespace

TEST(ResultsStore, Layout) {
  testing_util::TempDir dir;
  save_results(dir.path(), "KMeans", "wut", "x2", sample());
  EXPECT_TRUE(std::filesystem::exists(dir / "KMeans/wut/x2.result3.gz"));
  EXPECT_TRUE(std::filesystem::exists(dir / "KMeans/wut/x2.result4.gz"));
  EXPECT_EQ(result_path(dir.path(), "KMeans", "wut", "x2", 3), dir / "KMeans/wut/x2.result3.gz");
  EXPECT_EQ(io::read_maybe_gzip(dir / "KMeans/wut/x2.result3.gz"), "1\n1\n2\n2\n3\n3\n");
}

TEST(ResultsStore, RoundTripAndStableBytes) {
  testing_util::TempDir dir;
  save_results(dir.path(), "Single", "b", "d", sample());
  const auto first = testing_util::slurp(dir / "Single/b/d.result4.gz");
  auto loaded = load_results(dir.path(), "Single", "b", "d", {3, 4});
  ASSERT_EQ(loaded.partitions.size(), 1u);
  EXPECT_TRUE(loaded.partitions.at("Single") == sample());
  EXPECT_TRUE(loaded.warnings.empty());
  save_results(dir.path(), "Single", "b", "d", loaded.partitions.at("Single"));
  EXPECT_EQ(testing_util::slurp(dir / "Single/b/d.result4.gz"), first);
}

TEST(ResultsStore, GroupPrefixMatching) {
  testing_util::TempDir dir;
  for (const char* m : {"Genie_G0.1", "Genie_G0.3", "GenieOld", "KMeans"}) save_results(dir.path(), m, "b", "d", sample());
  EXPECT_EQ(list_method_dirs(dir.path(), "Genie"), (std::vector<std::string>{"GenieOld", "Genie_G0.1", "Genie_G0.3"}));
  EXPECT_EQ(list_method_dirs(dir.path(), "*").size(), 4u);
  EXPECT_TRUE(list_method_dirs(dir.path(), "DBSCAN").empty());
  EXPECT_EQ(load_results(dir.path(), "Genie_", "b", "d", {3, 4}).partitions.size(), 2u);
}

TEST(ResultsStore, IncompleteVariantDroppedWithWarning) {
  testing_util::TempDir dir;
  save_results(dir.path(), "A", "b", "d", sample());
  PartitionSet only3(6);
  only3.insert(labels({1, 1, 2, 2, 3, 3}));
  save_results(dir.path(), "B", "b", "d", only3);
  auto loaded = load_results(dir.path(), "*", "b", "d", {3, 4});
  EXPECT_EQ(loaded.partitions.size(), 1u);
  EXPECT_EQ(loaded.partitions.count("A"), 1u);
  ASSERT_EQ(loaded.warnings.size(), 1u);
  EXPECT_NE(loaded.warnings[0].find("B"), std::string::npos);
  EXPECT_EQ(scan_results(dir.path(), "*", "b", "d", {3, 4}).at("B").size(), 1u);
}

TEST(ResultsStore, GapIsParseErrorNamingFile) {
  testing_util::TempDir dir;
  io::write_gzip(dir / "M/b/d.result3.gz", "1\n1\n3\n3\n");
  try {
    load_results(dir.path(), "M", "b", "d", {3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ParseError);
    EXPECT_NE(std::string(e.what()).find("d.result3.gz"), std::string::npos);
  }
  io::write_gzip(dir / "N/b/d.result2.gz", "1\n2\nx\n");
  EXPECT_EQ(code_of([&] { load_results(dir.path(), "N", "b", "d", {2}); }), Errc::ParseError);
}

TEST(ResultsStore, Errors) {
  testing_util::TempDir dir;
  EXPECT_EQ(code_of([&] { load_results(dir / "nope", "*", "b", "d", {2}); }), Errc::MissingRoot);
  EXPECT_EQ(code_of([&] { save_results(dir.path(), "../x", "b", "d", sample()); }), Errc::BadArgument);
  EXPECT_EQ(code_of([&] { save_results(dir.path(), "M", "B!", "d", sample()); }), Errc::BadArgument);
  EXPECT_TRUE(is_valid_method_id("Genie_G0.3"));
  EXPECT_FALSE(is_valid_method_id(".."));
  EXPECT_FALSE(is_valid_method_id("a/b"));
}

TEST(ResultsStore, ImportsMultiColumnTables) {
  testing_util::TempDir dir;
  std::filesystem::create_directories(dir / "Genie/b");
  io::write_gzip(dir / "Genie/b/d.result2.gz",
                 "Genie_G0.1,Genie_G0.3,Genie_G0.5\n1,1,1\n1,2,1\n2,2,NA\n2,1,2\n");
  io::write_gzip(dir / "Genie/b/d.result3.gz",
                 "Genie_G0.1,Genie_G0.3,Genie_G0.5\n1,1,1\n2,2,2\n3,2,3\n3,3,3\n");
  auto loaded = load_results(dir.path(), "Genie", "b", "d", {2, 3});
  ASSERT_EQ(loaded.partitions.size(), 2u);
  EXPECT_EQ(loaded.partitions.at("Genie_G0.1").at(2), labels({1, 1, 2, 2}));
  EXPECT_EQ(loaded.partitions.at("Genie_G0.3").at(3), labels({1, 2, 2, 3}));
  // G0.5 has a non-integer entry for k = 2 and is therefore incomplete.
  EXPECT_EQ(loaded.partitions.count("Genie_G0.5"), 0u);
  EXPECT_EQ(loaded.warnings.size(), 2u);
}
