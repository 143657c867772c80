#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "posthist/text.hpp"

namespace posthist {

using PostId = std::int64_t;
using BlockId = std::int64_t;
using UserId = std::int64_t;

enum class BlockType { Text, Code };

std::string_view to_string(BlockType t);
std::optional<BlockType> parse_block_type(std::string_view s);

// PostHistoryTypeIds that change post content: Initial Body, Edit Body, Rollback Body.
inline constexpr int kInitialBody = 2;
inline constexpr int kEditBody = 5;
inline constexpr int kRollbackBody = 8;

inline constexpr bool is_content_type(int history_type_id) {
  return history_type_id == kInitialBody || history_type_id == kEditBody ||
         history_type_id == kRollbackBody;
}

struct PostHistoryRecord {
  std::int64_t record_id = 0;
  PostId post_id = 0;
  int history_type_id = 0;
  Timestamp creation_date{};
  std::optional<UserId> user_id;
  std::string text;
  // Set when history_type_id is not a content type; such records are kept
  // in the parsed stream but never become versions.
  bool flagged = false;
  std::size_t row = 0;
};

// Similarity attached to a matched block: EQUAL for content-equal matches,
// otherwise the metric score that selected the predecessor.
struct MatchedSimilarity {
  bool equal = false;
  double value = 1.0;

  static MatchedSimilarity equal_match() { return {true, 1.0}; }
  static MatchedSimilarity score(double v) { return {false, v}; }
  friend bool operator==(const MatchedSimilarity&, const MatchedSimilarity&) = default;
};

struct PostBlockVersion {
  BlockId block_id = 0;
  PostId post_id = 0;
  int version_index = 0;
  int local_id = 0;
  BlockType type = BlockType::Text;
  std::string content;
  std::optional<BlockId> predecessor_block_id;
  std::optional<int> predecessor_local_id;
  BlockId root_block_id = 0;
  int pred_count = 0;
  int succ_count = 0;
  std::optional<MatchedSimilarity> matched_similarity;
};

struct PostVersion {
  PostId post_id = 0;
  int version_index = 0;
  std::int64_t source_record_id = 0;
  int history_type_id = kInitialBody;
  Timestamp creation_date{};
  std::optional<UserId> editor_user_id;
  std::optional<int> predecessor_index;
  std::optional<int> successor_index;
  std::string body;
  std::vector<PostBlockVersion> blocks;
};

// All versions of one post, ordered by version_index (1-based, contiguous).
struct Post {
  PostId id = 0;
  std::vector<PostVersion> versions;
};

}  // namespace posthist
