#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "posthist/diff.hpp"

using namespace posthist;
namespace pt = posthist::testing;

namespace {

using Lines = std::vector<std::string>;

std::size_t edits(const std::vector<LineEdit>& ops) {
  std::size_t n = 0;
  for (const auto& e : ops) n += e.op != DiffOp::Keep;
  return n;
}

Lines random_lines(std::mt19937& rng, int max_len) {
  static const Lines pool = {"a", "b", "c", "{", "}", ""};
  Lines out(static_cast<std::size_t>(std::uniform_int_distribution<int>(0, max_len)(rng)));
  for (auto& l : out) l = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
  return out;
}

}  // namespace

TEST(LineDiff, IdenticalIsAllKeep) {
  const auto ops = line_diff("a\nb\nc", "a\nb\nc");
  ASSERT_EQ(ops.size(), 3u);
  for (const auto& e : ops) EXPECT_EQ(e.op, DiffOp::Keep);
}

TEST(LineDiff, OneChangedLine) {
  EXPECT_EQ(line_diff("a\nb\nc", "a\nx\nc"),
            (std::vector<LineEdit>{{DiffOp::Keep, "a"}, {DiffOp::Delete, "b"}, {DiffOp::Insert, "x"}, {DiffOp::Keep, "c"}}));
}

TEST(LineDiff, EmptyPredecessorIsAllInsert) {
  EXPECT_EQ(line_diff("", "a\nb"), (std::vector<LineEdit>{{DiffOp::Insert, "a"}, {DiffOp::Insert, "b"}}));
  EXPECT_EQ(line_diff("a", ""), (std::vector<LineEdit>{{DiffOp::Delete, "a"}}));
  EXPECT_TRUE(line_diff("", "").empty());
}

TEST(LineDiff, DeletionsPrecedeInsertions) {
  std::mt19937 rng(2);
  for (int i = 0; i < 500; ++i) {
    const auto ops = diff_lines(random_lines(rng, 8), random_lines(rng, 8));
    for (std::size_t k = 1; k < ops.size(); ++k) {
      EXPECT_FALSE(ops[k - 1].op == DiffOp::Insert && ops[k].op == DiffOp::Delete);
    }
  }
}

TEST(LineDiff, StatsCountOperations) {
  const auto s = diff_stats(line_diff("a\nb\nc", "a\nx\ny\nc"));
  EXPECT_EQ(s.added, 2);
  EXPECT_EQ(s.deleted, 1);
}

// Scripts are minimal: edits = |p| + |s| - 2 * LCS, with the LCS found by
// enumerating subsequences.
TEST(LineDiff, MinimalAgainstSubsetEnumeration) {
  std::mt19937 rng(9);
  for (int i = 0; i < 2000; ++i) {
    const auto p = random_lines(rng, 6);
    const auto s = random_lines(rng, 6);
    const auto ops = diff_lines(p, s);
    EXPECT_EQ(edits(ops), p.size() + s.size() - 2 * pt::oracle::lcs_by_subsets(p, s));
    EXPECT_EQ(apply_diff(ops, p), s);
  }
}

TEST(LineDiff, RoundTripOnLargerInputs) {
  std::mt19937 rng(10);
  for (int i = 0; i < 300; ++i) {
    const auto p = random_lines(rng, 60);
    const auto s = random_lines(rng, 60);
    EXPECT_EQ(apply_diff(diff_lines(p, s), p), s);
  }
}

TEST(ApplyDiff, RejectsMismatchedScripts) {
  const Lines pred = {"a", "b"};
  EXPECT_THROW(apply_diff({{DiffOp::Keep, "x"}}, pred), std::invalid_argument);
  EXPECT_THROW(apply_diff({{DiffOp::Delete, "b"}}, pred), std::invalid_argument);
  EXPECT_THROW(apply_diff({{DiffOp::Keep, "a"}, {DiffOp::Keep, "b"}, {DiffOp::Keep, "c"}}, pred),
               std::invalid_argument);
  // Unconsumed predecessor lines are an error as well.
  EXPECT_THROW(apply_diff({{DiffOp::Keep, "a"}}, pred), std::invalid_argument);
}
