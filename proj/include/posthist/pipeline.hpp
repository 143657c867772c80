#pragma once

#include <map>
#include <string>
#include <vector>

#include "posthist/diff.hpp"
#include "posthist/links.hpp"
#include "posthist/matcher.hpp"
#include "posthist/model.hpp"

namespace posthist {

// Extracts blocks for every version of a post (local ids from 1). Extraction
// warnings are appended with the post and version prefixed.
void blockify_post(Post& post, std::vector<std::string>* warnings = nullptr);

// Numbers blocks 1..N in (postId, versionIndex, localId) order.
void assign_block_ids(std::map<PostId, Post>& posts);

// Blockifies and numbers a corpus; matching is left undone.
std::vector<std::string> prepare_corpus(std::map<PostId, Post>& posts, unsigned parallelism = 1);

// Line diffs of every linked block pair, in successor block id order.
std::vector<PostBlockDiff> compute_diffs(const Post& post);

struct ReconstructedCorpus {
  std::map<PostId, Post> posts;
  std::vector<PostBlockDiff> diffs;
  std::vector<PostVersionUrl> urls;
  std::vector<std::string> warnings;
};

// Blockify, match, diff and URL extraction. Posts are processed
// independently; output does not depend on `parallelism`.
ReconstructedCorpus reconstruct(std::map<PostId, Post> posts, const MetricConfiguration& config,
                                unsigned parallelism = 1);

// Matches already prepared posts in place.
void match_corpus(std::map<PostId, Post>& posts, const MetricConfiguration& config, unsigned parallelism = 1);

}  // namespace posthist
