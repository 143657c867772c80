#include <gtest/gtest.h>

#include "posthist/ingest.hpp"
#include "posthist/pipeline.hpp"
#include "posthist/tables.hpp"
#include "synthetic.hpp"

using namespace posthist;
namespace pt = posthist::testing;

namespace {

std::map<PostId, Post> corpus(int posts, std::uint64_t seed) {
  pt::SyntheticOptions o;
  o.posts = posts;
  o.seed = seed;
  o.swap_probability = 0.2;
  return build_version_chains(parse_post_history(pt::write_post_history(pt::generate(o).records))).posts;
}

}  // namespace

TEST(BlockifyPost, LocalIdsStartAtOne) {
  Post p;
  p.id = 3;
  PostVersion v;
  v.post_id = 3;
  v.version_index = 1;
  v.body = "Intro\n\n    code();\n\nOutro";
  p.versions.push_back(v);
  blockify_post(p);
  const auto& blocks = p.versions[0].blocks;
  ASSERT_EQ(blocks.size(), 3u);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    EXPECT_EQ(blocks[i].local_id, static_cast<int>(i) + 1);
    EXPECT_EQ(blocks[i].post_id, 3);
    EXPECT_EQ(blocks[i].version_index, 1);
  }
  EXPECT_EQ(blocks[1].type, BlockType::Code);
}

TEST(BlockifyPost, WarningsNamePostAndVersion) {
  Post p;
  p.id = 77;
  PostVersion v;
  v.post_id = 77;
  v.version_index = 2;
  v.body = "text\n\n```\nopen fence";
  p.versions.push_back(v);
  std::vector<std::string> warnings;
  blockify_post(p, &warnings);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("77"), std::string::npos);
}

TEST(AssignBlockIds, OrderedByPostVersionLocalId) {
  auto posts = corpus(20, 2);
  prepare_corpus(posts);
  BlockId expected = 1;
  for (const auto& [id, post] : posts) {
    for (const auto& v : post.versions) {
      for (const auto& b : v.blocks) EXPECT_EQ(b.block_id, expected++);
    }
  }
}

TEST(Reconstruct, IndependentOfParallelism) {
  const auto posts = corpus(60, 3);
  const auto config = preset("paper-final");
  const auto a = reconstruct(posts, config, 1);
  const auto b = reconstruct(posts, config, 4);
  EXPECT_EQ(write_block_version_table(a.posts), write_block_version_table(b.posts));
  EXPECT_EQ(write_block_diff_table(a.diffs), write_block_diff_table(b.diffs));
  EXPECT_EQ(write_url_table(a.urls), write_url_table(b.urls));
  EXPECT_EQ(a.warnings, b.warnings);
}

TEST(Reconstruct, DiffsReplayEveryLink) {
  const auto result = reconstruct(corpus(40, 4), preset("paper-final"));
  std::map<BlockId, const PostBlockVersion*> by_id;
  std::size_t links = 0;
  for (const auto& [id, post] : result.posts) {
    for (const auto& v : post.versions) {
      for (const auto& b : v.blocks) {
        by_id[b.block_id] = &b;
        links += b.predecessor_block_id.has_value();
      }
    }
  }
  ASSERT_EQ(result.diffs.size(), links);
  BlockId last = 0;
  for (const auto& d : result.diffs) {
    EXPECT_GT(d.succ_block_id, last);
    last = d.succ_block_id;
    const auto& pred = *by_id.at(d.pred_block_id);
    const auto& succ = *by_id.at(d.succ_block_id);
    EXPECT_EQ(succ.predecessor_block_id, pred.block_id);
    EXPECT_EQ(join_lines(apply_diff(d.ops, split_lines(pred.content))), succ.content);
  }
}

TEST(Reconstruct, UrlsComeFromTextBlocks) {
  const auto result = reconstruct(corpus(60, 5), preset("paper-final"));
  ASSERT_FALSE(result.urls.empty());
  for (const auto& u : result.urls) {
    const auto& block = result.posts.at(u.post_id)
                            .versions.at(static_cast<std::size_t>(u.version_index - 1))
                            .blocks.at(static_cast<std::size_t>(u.block_local_id - 1));
    EXPECT_EQ(block.type, BlockType::Text);
    EXPECT_NE(block.content.find(u.url), std::string::npos);
  }
}

TEST(MatchCorpus, EqualsPerPostMatching) {
  auto posts = corpus(25, 6);
  prepare_corpus(posts);
  auto expected = posts;
  match_corpus(posts, preset("paper-final"), 2);
  for (auto& [id, post] : expected) {
    match_versions(post, preset("paper-final"));
    EXPECT_EQ(compute_diffs(post).size(), compute_diffs(posts.at(id)).size());
  }
  EXPECT_EQ(write_block_version_table(posts), write_block_version_table(expected));
}
