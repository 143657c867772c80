#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "posthist/diff.hpp"
#include "posthist/links.hpp"
#include "posthist/model.hpp"

namespace posthist {

class TableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tab-separated tables with a header row; text fields use escape_field().
//
// PostBlockVersion:
//   blockId postId versionIndex localId blockType predBlockId predLocalId
//   rootBlockId predCount succCount matchedSimilarity content
// matchedSimilarity is EQUAL, a decimal score, or empty when unmatched.
std::string write_block_version_table(const std::map<PostId, Post>& posts);
std::vector<PostBlockVersion> read_block_version_table(const std::string& text);

// Attaches blocks to the versions they belong to. Throws TableError for blocks
// whose post or version is missing or whose local ids are not 1..k.
void attach_blocks(std::map<PostId, Post>& posts, std::vector<PostBlockVersion> blocks);

// PostBlockDiff: predBlockId succBlockId opIndex op line, one row per op.
std::string write_block_diff_table(const std::vector<PostBlockDiff>& diffs);
std::vector<PostBlockDiff> read_block_diff_table(const std::string& text);

// PostVersionUrl: postId versionIndex blockLocalId position url
std::string write_url_table(const std::vector<PostVersionUrl>& urls);

}  // namespace posthist
