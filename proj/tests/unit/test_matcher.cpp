#include <gtest/gtest.h>

#include <set>

#include "posthist/matcher.hpp"
#include "posthist/pipeline.hpp"
#include "synthetic.hpp"

using namespace posthist;
namespace pt = posthist::testing;

namespace {

const auto T = BlockType::Text;
const auto C = BlockType::Code;

using VersionSpec = std::vector<std::pair<BlockType, std::string>>;

Post make_post(const std::vector<VersionSpec>& versions, PostId id = 1) {
  Post p;
  p.id = id;
  BlockId next = 1;
  for (std::size_t v = 0; v < versions.size(); ++v) {
    PostVersion pv;
    pv.post_id = id;
    pv.version_index = static_cast<int>(v) + 1;
    for (std::size_t l = 0; l < versions[v].size(); ++l) {
      PostBlockVersion b;
      b.block_id = next++;
      b.post_id = id;
      b.version_index = pv.version_index;
      b.local_id = static_cast<int>(l) + 1;
      b.type = versions[v][l].first;
      b.content = versions[v][l].second;
      b.root_block_id = b.block_id;
      pv.blocks.push_back(b);
    }
    p.versions.push_back(pv);
  }
  return p;
}

std::vector<std::optional<int>> pred_locals(const Post& p, int version) {
  std::vector<std::optional<int>> out;
  for (const auto& b : p.versions.at(static_cast<std::size_t>(version - 1)).blocks) out.push_back(b.predecessor_local_id);
  return out;
}

// All current blocks see every previous block as a candidate.
std::vector<std::vector<std::size_t>> sets(std::initializer_list<std::vector<std::size_t>> s) { return s; }

}  // namespace

TEST(ComputeCandidates, EqualityDominates) {
  const auto post = make_post({{{T, "same"}, {T, "similar same"}}});
  PostBlockVersion b;
  b.type = T;
  b.content = "same";
  const auto c = compute_candidates(post.versions[0].blocks, b, preset("paper-final"));
  EXPECT_EQ(c.pred_equal, std::vector<int>{1});
  EXPECT_EQ(c.pred, std::vector<int>{1});
}

TEST(ComputeCandidates, BestSimilarityAboveThreshold) {
  // tokenJaccard: {a b c x y} vs {a..h} = 3/10, vs {a q r s t} = 1/9.
  const auto post = make_post({{{T, "a b c d e f g h"}, {C, "a b c x y"}, {T, "a q r s t"}}});
  PostBlockVersion b;
  b.type = T;
  b.content = "a b c x y";
  const auto config = parse_configuration("tokenJaccard@0.17");
  const auto c = compute_candidates(post.versions[0].blocks, b, config);
  EXPECT_TRUE(c.pred_equal.empty());
  EXPECT_EQ(c.pred_sim, std::vector<int>{1});
  EXPECT_NEAR(c.max_sim, 0.3, 1e-12);
  EXPECT_EQ(c.pred, std::vector<int>{1});
}

TEST(ComputeCandidates, NothingAboveThreshold) {
  const auto post = make_post({{{T, "p q r"}}});
  PostBlockVersion b;
  b.type = T;
  b.content = "x y z";
  const auto c = compute_candidates(post.versions[0].blocks, b, parse_configuration("tokenJaccard@0.17"));
  EXPECT_TRUE(c.pred.empty());
  EXPECT_EQ(c.max_sim, 0.0);
}

TEST(ComputeCandidates, EqualityUsesRawContent) {
  const auto post = make_post({{{T, "Hello  World"}}});
  PostBlockVersion b;
  b.type = T;
  b.content = "hello world";
  const auto c = compute_candidates(post.versions[0].blocks, b, parse_configuration("equalNormalized@1"));
  EXPECT_TRUE(c.pred_equal.empty());
  EXPECT_EQ(c.pred_sim, std::vector<int>{1});
}

TEST(ComputeCandidates, BackupUsedWhenPrimaryTooShort) {
  // "ab" is too short for four-grams; the token backup decides.
  const auto post = make_post({{{C, "ab cd"}}});
  PostBlockVersion b;
  b.type = C;
  b.content = "ab";
  const auto with_backup =
      compute_candidates(post.versions[0].blocks, b,
                         parse_configuration("text=fourGramJaccard@0.5;code=fourGramJaccard@0.5;codeBackup=tokenJaccard@0.5"));
  EXPECT_EQ(with_backup.pred, std::vector<int>{1});
  const auto without = compute_candidates(post.versions[0].blocks, b, parse_configuration("fourGramJaccard@0.5"));
  EXPECT_TRUE(without.pred.empty());
}

TEST(MatchVersions, IdenticalVersionsLinkTwins) {
  const VersionSpec v = {{T, "one"}, {C, "two"}, {T, "three"}};
  auto post = make_post({v, v});
  match_versions(post, preset("paper-final"));
  EXPECT_EQ(pred_locals(post, 2), (std::vector<std::optional<int>>{1, 2, 3}));
  for (const auto& b : post.versions[1].blocks) {
    EXPECT_EQ(b.matched_similarity, MatchedSimilarity::equal_match());
    EXPECT_EQ(b.pred_count, 1);
  }
  for (const auto& b : post.versions[0].blocks) EXPECT_EQ(b.succ_count, 1);
}

TEST(MatchVersions, DuplicateEqualBlocksShareOnePredecessor) {
  auto post = make_post({{{T, "intro"}, {C, "x = 1"}},
                         {{T, "intro"}, {C, "x = 1"}, {T, "again"}, {C, "x = 1"}}});
  match_versions(post, preset("paper-final"));
  const auto& v2 = post.versions[1].blocks;
  EXPECT_EQ(v2[1].predecessor_local_id, 2);
  EXPECT_FALSE(v2[3].predecessor_local_id);
  EXPECT_EQ(v2[3].root_block_id, v2[3].block_id);
  EXPECT_EQ(v2[1].pred_count, 1);
  EXPECT_EQ(v2[3].pred_count, 1);
  EXPECT_EQ(post.versions[0].blocks[1].succ_count, 2);
}

// v1: alpha dup beta dup gamma; v2: beta dup gamma. The outer blocks link
// uniquely to v1's 3 and 5, so context picks v1's 4 for the middle block,
// where position alone would pick 2.
TEST(MatchVersions, ContextBeatsPosition) {
  auto post = make_post({{{T, "alpha"}, {C, "dup"}, {T, "beta"}, {C, "dup"}, {T, "gamma"}},
                         {{T, "beta"}, {C, "dup"}, {T, "gamma"}}});
  match_versions(post, preset("equal"));
  EXPECT_EQ(pred_locals(post, 2), (std::vector<std::optional<int>>{3, 4, 5}));
}

TEST(MatchVersions, PositionWhenNoContext) {
  auto post = make_post({{{C, "dup"}, {T, "alpha"}, {C, "dup"}}, {{C, "dup"}}});
  match_versions(post, preset("equal"));
  EXPECT_EQ(pred_locals(post, 2), (std::vector<std::optional<int>>{1}));
}

TEST(SetPredPosition, ClosestThenSmallest) {
  // Index j = 1 is local id 2.
  {
    std::vector<std::optional<std::size_t>> pred_of(2);
    pred_of[0] = 9;  // already set, untouched
    std::vector<bool> claimed(10, false);
    set_pred_position(sets({{}, {0, 4}}), pred_of, claimed);
    EXPECT_EQ(pred_of[1], 0u);
  }
  {
    std::vector<std::optional<std::size_t>> pred_of(2);
    pred_of[0] = 9;
    std::vector<bool> claimed(10, false);
    set_pred_position(sets({{}, {2, 0}}), pred_of, claimed);
    EXPECT_EQ(pred_of[1], 0u);
  }
  {
    std::vector<std::optional<std::size_t>> pred_of(1);
    std::vector<bool> claimed(10, false);
    set_pred_position(sets({{7}}), pred_of, claimed);
    EXPECT_EQ(pred_of[0], 7u);
    EXPECT_TRUE(claimed[7]);
  }
  {
    std::vector<std::optional<std::size_t>> pred_of(1);
    std::vector<bool> claimed(10, false);
    claimed[0] = true;
    set_pred_position(sets({{0, 3}}), pred_of, claimed);
    EXPECT_EQ(pred_of[0], 3u);
  }
}

TEST(SetPredContext, DirectionsUseTheRightNeighbours) {
  // Current blocks 0..2; block 1 has candidates {1, 3}.
  const auto pred_sets = sets({{0}, {1, 3}, {4}});
  {
    std::vector<std::optional<std::size_t>> pred_of = {std::nullopt, std::nullopt, 4};
    std::vector<bool> claimed(5, false);
    claimed[4] = true;
    EXPECT_FALSE(set_pred_context(pred_sets, pred_of, claimed, ContextDirection::Both));
    EXPECT_TRUE(set_pred_context(pred_sets, pred_of, claimed, ContextDirection::Below));
    EXPECT_EQ(pred_of[1], 3u);
  }
  {
    std::vector<std::optional<std::size_t>> pred_of = {0, std::nullopt, std::nullopt};
    std::vector<bool> claimed(5, false);
    claimed[0] = true;
    EXPECT_FALSE(set_pred_context(pred_sets, pred_of, claimed, ContextDirection::Below));
    EXPECT_TRUE(set_pred_context(pred_sets, pred_of, claimed, ContextDirection::Above));
    EXPECT_EQ(pred_of[1], 1u);
  }
}

TEST(Lifespans, UneditedDeletedAndInserted) {
  auto post = make_post({{{T, "a"}, {C, "b"}}, {{T, "a"}, {C, "b"}}});
  match_versions(post, preset("paper-final"));
  auto spans = build_lifespans(post);
  ASSERT_EQ(spans.size(), 2u);
  for (const auto& s : spans) EXPECT_EQ(s.members.size(), 2u);

  auto deleted = make_post({{{T, "a"}, {C, "b"}}, {{T, "a"}}});
  match_versions(deleted, preset("paper-final"));
  spans = build_lifespans(deleted);
  ASSERT_EQ(spans.size(), 2u);
  EXPECT_EQ(spans[1].members.size(), 1u);
  EXPECT_EQ(spans[1].members[0].version_index, 1);

  auto inserted = make_post({{{T, "a"}}, {{T, "a"}, {C, "fresh code"}}});
  match_versions(inserted, preset("paper-final"));
  spans = build_lifespans(inserted);
  ASSERT_EQ(spans.size(), 2u);
  EXPECT_EQ(spans[1].root_block_id, inserted.versions[1].blocks[1].block_id);
  EXPECT_EQ(spans[1].type, C);
}

TEST(Configuration, ParseAndName) {
  const auto c = parse_configuration("text=levenshtein@0.5;code=tokenDice@0.25;codeBackup=tokenJaccard@0.1");
  EXPECT_EQ(c.text.metric->name, "levenshtein");
  EXPECT_EQ(c.code.threshold, 0.25);
  EXPECT_FALSE(c.text_backup);
  EXPECT_EQ(parse_configuration(c.name()), c);
  EXPECT_EQ(parse_configuration("tokenDice@0.3"), MetricConfiguration::uniform(metrics::resolve("tokenDice"), 0.3));
  EXPECT_EQ(parse_configuration(preset("paper-final").name()), preset("paper-final"));
  EXPECT_EQ(parse_configuration("equal"), preset("equal"));
}

TEST(Configuration, Rejections) {
  EXPECT_THROW(parse_configuration("tokenDice@1.5"), ConfigurationError);
  EXPECT_THROW(parse_configuration("tokenDice@-0.1"), ConfigurationError);
  EXPECT_THROW(parse_configuration("tokenDice"), ConfigurationError);
  EXPECT_THROW(parse_configuration("noSuch@0.5"), ConfigurationError);
  EXPECT_THROW(parse_configuration("text=tokenDice@0.5"), ConfigurationError);
  EXPECT_THROW(parse_configuration("text=tokenDice@0.5;code=tokenDice@0.5;other=tokenDice@0.5"), ConfigurationError);
  EXPECT_THROW(parse_configuration("text=tokenDice@0.5;code=tokenDice@0.5;textBackup=fourGramDice@0.5"),
               ConfigurationError);
  EXPECT_THROW(preset("nope"), ConfigurationError);
}

TEST(Configuration, PaperFinalPreset) {
  const auto c = preset("paper-final");
  EXPECT_EQ(c.text.metric->name, "manhattanFourGramNormalized");
  EXPECT_DOUBLE_EQ(c.text.threshold, 0.17);
  EXPECT_EQ(c.code.metric->name, "winnowingFourGramDiceNormalized");
  EXPECT_DOUBLE_EQ(c.code.threshold, 0.23);
  EXPECT_EQ(c.text_backup->metric->name, "cosineTokenNormalizedTermFrequency");
  EXPECT_DOUBLE_EQ(c.text_backup->threshold, 0.36);
  EXPECT_DOUBLE_EQ(c.code_backup->threshold, 0.26);
}

// Linearity, type safety, equality dominance and determinism on random
// histories with insertions, deletions, swaps and duplicates.
TEST(MatchVersions, PropertiesOnSyntheticHistories) {
  pt::SyntheticOptions o;
  o.posts = 150;
  o.min_versions = 3;
  o.max_versions = 6;
  o.swap_probability = 0.3;
  o.duplicate_probability = 0.3;
  o.seed = 21;
  const auto corpus = pt::generate(o);
  auto posts = pt::load_posts(corpus.records);
  auto again = posts;
  const auto config = preset("paper-final");
  match_corpus(posts, config, 1);
  match_corpus(again, config, 4);
  for (const auto& [id, post] : posts) {
    const auto& other = again.at(id);
    for (std::size_t v = 0; v < post.versions.size(); ++v) {
      const auto& blocks = post.versions[v].blocks;
      std::set<int> used;
      for (std::size_t j = 0; j < blocks.size(); ++j) {
        const auto& b = blocks[j];
        EXPECT_EQ(b.predecessor_block_id, other.versions[v].blocks[j].predecessor_block_id);
        EXPECT_EQ(b.matched_similarity, other.versions[v].blocks[j].matched_similarity);
        if (v == 0) {
          EXPECT_FALSE(b.predecessor_local_id);
          continue;
        }
        const auto& prev = post.versions[v - 1].blocks;
        const bool has_equal = std::any_of(prev.begin(), prev.end(), [&](const PostBlockVersion& p) {
          return p.type == b.type && p.content == b.content;
        });
        if (!b.predecessor_local_id) continue;
        EXPECT_TRUE(used.insert(*b.predecessor_local_id).second) << "post " << id;
        const auto& p = prev.at(static_cast<std::size_t>(*b.predecessor_local_id - 1));
        EXPECT_EQ(p.type, b.type);
        EXPECT_EQ(p.block_id, *b.predecessor_block_id);
        EXPECT_EQ(p.root_block_id, b.root_block_id);
        if (has_equal) {
          EXPECT_EQ(p.content, b.content) << "post " << id << " v" << v + 1 << " block " << b.local_id;
          EXPECT_EQ(b.matched_similarity, MatchedSimilarity::equal_match());
        }
      }
    }
  }
}

TEST(MatchVersions, RerunIsIdempotent) {
  pt::SyntheticOptions o;
  o.posts = 30;
  o.seed = 4;
  auto posts = pt::load_posts(pt::generate(o).records);
  match_corpus(posts, preset("paper-final"));
  const auto first = posts;
  match_corpus(posts, preset("paper-final"));
  for (const auto& [id, post] : posts) {
    for (std::size_t v = 0; v < post.versions.size(); ++v) {
      for (std::size_t j = 0; j < post.versions[v].blocks.size(); ++j) {
        const auto& a = post.versions[v].blocks[j];
        const auto& b = first.at(id).versions[v].blocks[j];
        EXPECT_EQ(a.predecessor_block_id, b.predecessor_block_id);
        EXPECT_EQ(a.root_block_id, b.root_block_id);
        EXPECT_EQ(a.pred_count, b.pred_count);
        EXPECT_EQ(a.succ_count, b.succ_count);
      }
    }
  }
}

// Unedited blocks in histories that only change the tail keep their local id.
TEST(MatchVersions, UneditedBlocksKeepLocalIds) {
  pt::SyntheticOptions o;
  o.posts = 100;
  o.tail_only = true;
  o.modify_probability = 0.0;
  o.seed = 8;
  auto posts = pt::load_posts(pt::generate(o).records);
  match_corpus(posts, preset("paper-final"));
  std::size_t linked = 0;
  for (const auto& [id, post] : posts) {
    for (const auto& v : post.versions) {
      for (const auto& b : v.blocks) {
        if (!b.predecessor_local_id) continue;
        ++linked;
        EXPECT_EQ(*b.predecessor_local_id, b.local_id);
      }
    }
  }
  EXPECT_GT(linked, 100u);
}
