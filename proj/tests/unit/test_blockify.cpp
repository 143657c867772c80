#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "posthist/blockify.hpp"
#include "synthetic.hpp"

using namespace posthist;
namespace pt = posthist::testing;

namespace {

std::vector<std::pair<BlockType, std::string>> simple(std::string_view body) {
  std::vector<std::pair<BlockType, std::string>> out;
  for (const auto& b : extract_blocks(body).blocks) out.emplace_back(b.type, b.content);
  return out;
}

const auto T = BlockType::Text;
const auto C = BlockType::Code;

}  // namespace

TEST(ExtractBlocks, IndentedCodeBetweenText) {
  EXPECT_EQ(simple("Intro\n\n    int x = 1;\n    x++;\n\nEnd"),
            (std::vector<std::pair<BlockType, std::string>>{{T, "Intro"}, {C, "int x = 1;\nx++;"}, {T, "End"}}));
}

TEST(ExtractBlocks, InlineCodeStaysInText) {
  EXPECT_EQ(simple("Use `foo()` here"), (std::vector<std::pair<BlockType, std::string>>{{T, "Use `foo()` here"}}));
}

TEST(ExtractBlocks, EmptyBody) { EXPECT_TRUE(extract_blocks("").blocks.empty()); }

TEST(ExtractBlocks, FencedCode) {
  EXPECT_EQ(simple("```\ncode\n```"), (std::vector<std::pair<BlockType, std::string>>{{C, "code"}}));
}

TEST(ExtractBlocks, WhitespaceOnlyBodyHasNoBlocks) { EXPECT_TRUE(extract_blocks("  \n\n \t\n").blocks.empty()); }

TEST(ExtractBlocks, UnterminatedFenceWarns) {
  const auto r = extract_blocks("a\n\n```\nb");
  ASSERT_EQ(r.blocks.size(), 2u);
  EXPECT_EQ(r.blocks[1].content, "b");
  EXPECT_EQ(r.warnings.size(), 1u);
}

TEST(ExtractBlocks, TextBlockIsIdempotent) {
  const std::string text = "Some words with `inline` code\nand a second line.";
  const auto once = extract_blocks(text).blocks;
  ASSERT_EQ(once.size(), 1u);
  const auto twice = extract_blocks(once[0].content).blocks;
  ASSERT_EQ(twice.size(), 1u);
  EXPECT_EQ(twice[0].type, T);
  EXPECT_EQ(twice[0].content, once[0].content);
}

class BlockifyCorpus : public ::testing::TestWithParam<pt::BlockFixture> {};

TEST_P(BlockifyCorpus, MatchesExpectedBlocks) {
  const auto& f = GetParam();
  const auto r = extract_blocks(f.body);
  ASSERT_EQ(r.blocks.size(), f.blocks.size()) << f.name;
  for (std::size_t i = 0; i < f.blocks.size(); ++i) {
    EXPECT_EQ(r.blocks[i].type, f.blocks[i].type) << f.name << " block " << i + 1;
    EXPECT_EQ(r.blocks[i].content, f.blocks[i].content) << f.name << " block " << i + 1;
    std::set<std::string> got;
    for (auto n : r.blocks[i].notations) got.emplace(to_string(n));
    for (const auto& n : f.blocks[i].notations) EXPECT_TRUE(got.count(n)) << f.name << " missing notation " << n;
  }
  EXPECT_EQ(r.warnings.size(), f.warnings) << f.name;
}

TEST_P(BlockifyCorpus, ContentRoundTrip) {
  const auto& f = GetParam();
  EXPECT_EQ(pt::block_characters(extract_blocks(f.body).blocks), pt::marker_free_characters(f.body))
      << f.name;
}

TEST_P(BlockifyCorpus, TypesAlternate) {
  const auto blocks = extract_blocks(GetParam().body).blocks;
  for (std::size_t i = 1; i < blocks.size(); ++i) EXPECT_NE(blocks[i].type, blocks[i - 1].type);
  for (const auto& b : blocks) EXPECT_FALSE(trim(b.content).empty());
}

INSTANTIATE_TEST_SUITE_P(Fixtures, BlockifyCorpus,
                         ::testing::ValuesIn(pt::load_blockify_fixtures(POSTHIST_TEST_DATA "/blockify")),
                         [](const auto& info) { return info.param.name; });

TEST(BlockifyCorpusCoverage, AllSixNotationsOccur) {
  std::set<std::string> seen;
  for (const auto& f : pt::load_blockify_fixtures(POSTHIST_TEST_DATA "/blockify")) {
    for (const auto& b : extract_blocks(f.body).blocks) {
      for (auto n : b.notations) seen.emplace(to_string(n));
    }
  }
  for (const char* n : {"indented", "fenced", "stack-snippet", "language-tag", "pre-code", "script"}) {
    EXPECT_TRUE(seen.count(n)) << n;
  }
}

// Random bodies from the generator: alternation, no empty blocks, and no
// character loss.
TEST(ExtractBlocks, PropertiesOnSyntheticBodies) {
  pt::SyntheticOptions o;
  o.posts = 100;
  o.seed = 5;
  for (const auto& post : pt::generate(o).posts) {
    for (const auto& body : post.bodies) {
      const auto blocks = extract_blocks(body).blocks;
      for (std::size_t i = 1; i < blocks.size(); ++i) ASSERT_NE(blocks[i].type, blocks[i - 1].type);
      EXPECT_EQ(pt::block_characters(blocks), pt::marker_free_characters(body));
    }
  }
}
