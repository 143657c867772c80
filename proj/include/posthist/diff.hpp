#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "posthist/model.hpp"

namespace posthist {

enum class DiffOp { Keep, Insert, Delete };

std::string_view to_string(DiffOp op);

struct LineEdit {
  DiffOp op = DiffOp::Keep;
  std::string line;
  bool operator==(const LineEdit&) const = default;
};

struct PostBlockDiff {
  BlockId pred_block_id = 0;
  BlockId succ_block_id = 0;
  std::vector<LineEdit> ops;
};

// Shortest edit script between two line lists (Myers). Deletions precede
// insertions inside a changed region.
std::vector<LineEdit> diff_lines(const std::vector<std::string>& pred, const std::vector<std::string>& succ);

// Line diff of two block contents, split with split_lines().
std::vector<LineEdit> line_diff(std::string_view pred, std::string_view succ);

// Replays a script against the predecessor's lines. Throws std::invalid_argument
// when a keep/delete does not match the input.
std::vector<std::string> apply_diff(const std::vector<LineEdit>& ops, const std::vector<std::string>& pred);

struct DiffStats {
  int added = 0;
  int deleted = 0;
};
DiffStats diff_stats(const std::vector<LineEdit>& ops);

}  // namespace posthist
