#include "posthist/pipeline.hpp"

#include "posthist/blockify.hpp"
#include "posthist/parallel.hpp"

namespace posthist {

void blockify_post(Post& post, std::vector<std::string>* warnings) {
  for (auto& v : post.versions) {
    auto extraction = extract_blocks(v.body);
    v.blocks.clear();
    v.blocks.reserve(extraction.blocks.size());
    int local = 0;
    for (auto& eb : extraction.blocks) {
      PostBlockVersion b;
      b.post_id = post.id;
      b.version_index = v.version_index;
      b.local_id = ++local;
      b.type = eb.type;
      b.content = std::move(eb.content);
      v.blocks.push_back(std::move(b));
    }
    if (warnings) {
      for (const auto& w : extraction.warnings) {
        warnings->push_back("post " + std::to_string(post.id) + " version " + std::to_string(v.version_index) + ": " +
                            w);
      }
    }
  }
}

void assign_block_ids(std::map<PostId, Post>& posts) {
  BlockId next = 1;
  for (auto& [id, post] : posts) {
    for (auto& v : post.versions) {
      for (auto& b : v.blocks) {
        b.block_id = next++;
        b.root_block_id = b.block_id;
      }
    }
  }
}

namespace {

std::vector<Post*> post_pointers(std::map<PostId, Post>& posts) {
  std::vector<Post*> out;
  out.reserve(posts.size());
  for (auto& [id, post] : posts) out.push_back(&post);
  return out;
}

}  // namespace

std::vector<std::string> prepare_corpus(std::map<PostId, Post>& posts, unsigned parallelism) {
  auto ptrs = post_pointers(posts);
  std::vector<std::vector<std::string>> warnings(ptrs.size());
  parallel_for(ptrs.size(), parallelism, [&](std::size_t i) { blockify_post(*ptrs[i], &warnings[i]); });
  assign_block_ids(posts);
  std::vector<std::string> merged;
  for (auto& w : warnings) merged.insert(merged.end(), w.begin(), w.end());
  return merged;
}

std::vector<PostBlockDiff> compute_diffs(const Post& post) {
  std::vector<PostBlockDiff> out;
  for (std::size_t i = 1; i < post.versions.size(); ++i) {
    const auto& prev = post.versions[i - 1].blocks;
    for (const auto& b : post.versions[i].blocks) {
      if (!b.predecessor_local_id) continue;
      const auto& p = prev[static_cast<std::size_t>(*b.predecessor_local_id - 1)];
      out.push_back({p.block_id, b.block_id, line_diff(p.content, b.content)});
    }
  }
  return out;
}

void match_corpus(std::map<PostId, Post>& posts, const MetricConfiguration& config, unsigned parallelism) {
  validate(config);
  const auto similarity = config_similarity(config);
  auto ptrs = post_pointers(posts);
  parallel_for(ptrs.size(), parallelism, [&](std::size_t i) { match_versions(*ptrs[i], similarity); });
}

ReconstructedCorpus reconstruct(std::map<PostId, Post> posts, const MetricConfiguration& config,
                                unsigned parallelism) {
  ReconstructedCorpus out;
  out.warnings = prepare_corpus(posts, parallelism);
  match_corpus(posts, config, parallelism);

  auto ptrs = post_pointers(posts);
  std::vector<std::vector<PostBlockDiff>> diffs(ptrs.size());
  std::vector<std::vector<PostVersionUrl>> urls(ptrs.size());
  parallel_for(ptrs.size(), parallelism, [&](std::size_t i) {
    diffs[i] = compute_diffs(*ptrs[i]);
    urls[i] = extract_post_urls(*ptrs[i]);
  });
  for (auto& d : diffs) {
    for (auto& x : d) out.diffs.push_back(std::move(x));
  }
  for (auto& u : urls) {
    for (auto& x : u) out.urls.push_back(std::move(x));
  }
  out.posts = std::move(posts);
  return out;
}

}  // namespace posthist
