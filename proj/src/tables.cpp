#include "posthist/tables.hpp"

#include <algorithm>
#include <charconv>

namespace posthist {

namespace {

std::string opt_int(const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : std::string(); }

[[noreturn]] void fail(std::string_view table, std::size_t row, const std::string& what) {
  throw TableError(std::string(table) + " row " + std::to_string(row) + ": " + what);
}

std::int64_t need_int(std::string_view s, std::string_view table, std::size_t row, std::string_view field) {
  auto v = parse_int(s);
  if (!v) fail(table, row, "bad " + std::string(field) + " '" + std::string(s) + "'");
  return *v;
}

std::optional<std::int64_t> maybe_int(std::string_view s, std::string_view table, std::size_t row,
                                      std::string_view field) {
  if (s.empty()) return std::nullopt;
  return need_int(s, table, row, field);
}

template <typename RowFn>
void for_rows(const std::string& text, std::size_t fields, std::string_view table, RowFn&& fn) {
  const auto lines = split_lines(text);
  if (!lines.empty() && split_tabs(lines[0]).size() != fields) {
    fail(table, 1, "header must have " + std::to_string(fields) + " columns");
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = split_tabs(lines[i]);
    if (f.size() != fields) {
      fail(table, i + 1, "expected " + std::to_string(fields) + " fields, got " + std::to_string(f.size()));
    }
    fn(f, i + 1);
  }
}

}  // namespace

std::string write_block_version_table(const std::map<PostId, Post>& posts) {
  std::string out =
      "blockId\tpostId\tversionIndex\tlocalId\tblockType\tpredBlockId\tpredLocalId\trootBlockId\tpredCount\t"
      "succCount\tmatchedSimilarity\tcontent\n";
  for (const auto& [id, post] : posts) {
    for (const auto& v : post.versions) {
      for (const auto& b : v.blocks) {
        std::string sim;
        if (b.matched_similarity) {
          sim = b.matched_similarity->equal ? "EQUAL" : format_double(b.matched_similarity->value, 17);
        }
        out += std::to_string(b.block_id) + '\t' + std::to_string(b.post_id) + '\t' +
               std::to_string(b.version_index) + '\t' + std::to_string(b.local_id) + '\t' +
               std::string(to_string(b.type)) + '\t' + opt_int(b.predecessor_block_id) + '\t' +
               opt_int(b.predecessor_local_id) + '\t' + std::to_string(b.root_block_id) + '\t' +
               std::to_string(b.pred_count) + '\t' + std::to_string(b.succ_count) + '\t' + sim + '\t' +
               escape_field(b.content) + '\n';
      }
    }
  }
  return out;
}

std::vector<PostBlockVersion> read_block_version_table(const std::string& text) {
  static constexpr std::string_view kTable = "PostBlockVersion";
  std::vector<PostBlockVersion> out;
  for_rows(text, 12, kTable, [&](const std::vector<std::string_view>& f, std::size_t row) {
    PostBlockVersion b;
    b.block_id = need_int(f[0], kTable, row, "blockId");
    b.post_id = need_int(f[1], kTable, row, "postId");
    b.version_index = static_cast<int>(need_int(f[2], kTable, row, "versionIndex"));
    b.local_id = static_cast<int>(need_int(f[3], kTable, row, "localId"));
    const auto type = parse_block_type(f[4]);
    if (!type) fail(kTable, row, "bad blockType '" + std::string(f[4]) + "'");
    b.type = *type;
    b.predecessor_block_id = maybe_int(f[5], kTable, row, "predBlockId");
    if (auto l = maybe_int(f[6], kTable, row, "predLocalId")) b.predecessor_local_id = static_cast<int>(*l);
    b.root_block_id = need_int(f[7], kTable, row, "rootBlockId");
    b.pred_count = static_cast<int>(need_int(f[8], kTable, row, "predCount"));
    b.succ_count = static_cast<int>(need_int(f[9], kTable, row, "succCount"));
    if (f[10] == "EQUAL") {
      b.matched_similarity = MatchedSimilarity::equal_match();
    } else if (!f[10].empty()) {
      double v = 0;
      const auto [ptr, ec] = std::from_chars(f[10].data(), f[10].data() + f[10].size(), v);
      if (ec != std::errc() || ptr != f[10].data() + f[10].size()) fail(kTable, row, "bad matchedSimilarity");
      b.matched_similarity = MatchedSimilarity::score(v);
    }
    b.content = unescape_field(f[11]);
    out.push_back(std::move(b));
  });
  return out;
}

void attach_blocks(std::map<PostId, Post>& posts, std::vector<PostBlockVersion> blocks) {
  for (auto& [id, post] : posts) {
    for (auto& v : post.versions) v.blocks.clear();
  }
  for (auto& b : blocks) {
    auto it = posts.find(b.post_id);
    if (it == posts.end()) throw TableError("block " + std::to_string(b.block_id) + " references unknown post");
    auto& versions = it->second.versions;
    if (b.version_index < 1 || static_cast<std::size_t>(b.version_index) > versions.size()) {
      throw TableError("block " + std::to_string(b.block_id) + " references unknown version");
    }
    versions[static_cast<std::size_t>(b.version_index - 1)].blocks.push_back(std::move(b));
  }
  for (auto& [id, post] : posts) {
    for (auto& v : post.versions) {
      std::sort(v.blocks.begin(), v.blocks.end(),
                [](const PostBlockVersion& a, const PostBlockVersion& b) { return a.local_id < b.local_id; });
      for (std::size_t k = 0; k < v.blocks.size(); ++k) {
        if (v.blocks[k].local_id != static_cast<int>(k + 1)) {
          throw TableError("post " + std::to_string(id) + " version " + std::to_string(v.version_index) +
                           ": local ids are not contiguous");
        }
      }
    }
  }
}

std::string write_block_diff_table(const std::vector<PostBlockDiff>& diffs) {
  std::string out = "predBlockId\tsuccBlockId\topIndex\top\tline\n";
  for (const auto& d : diffs) {
    for (std::size_t k = 0; k < d.ops.size(); ++k) {
      out += std::to_string(d.pred_block_id) + '\t' + std::to_string(d.succ_block_id) + '\t' + std::to_string(k) +
             '\t' + std::string(to_string(d.ops[k].op)) + '\t' + escape_field(d.ops[k].line) + '\n';
    }
  }
  return out;
}

std::vector<PostBlockDiff> read_block_diff_table(const std::string& text) {
  static constexpr std::string_view kTable = "PostBlockDiff";
  std::vector<PostBlockDiff> out;
  for_rows(text, 5, kTable, [&](const std::vector<std::string_view>& f, std::size_t row) {
    const BlockId pred = need_int(f[0], kTable, row, "predBlockId");
    const BlockId succ = need_int(f[1], kTable, row, "succBlockId");
    const auto index = need_int(f[2], kTable, row, "opIndex");
    DiffOp op;
    if (f[3] == "keep") {
      op = DiffOp::Keep;
    } else if (f[3] == "insert") {
      op = DiffOp::Insert;
    } else if (f[3] == "delete") {
      op = DiffOp::Delete;
    } else {
      fail(kTable, row, "bad op '" + std::string(f[3]) + "'");
    }
    if (out.empty() || out.back().succ_block_id != succ || out.back().pred_block_id != pred) {
      out.push_back({pred, succ, {}});
    }
    if (index != static_cast<std::int64_t>(out.back().ops.size())) fail(kTable, row, "ops out of order");
    out.back().ops.push_back({op, unescape_field(f[4])});
  });
  return out;
}

std::string write_url_table(const std::vector<PostVersionUrl>& urls) {
  std::string out = "postId\tversionIndex\tblockLocalId\tposition\turl\n";
  for (const auto& u : urls) {
    out += std::to_string(u.post_id) + '\t' + std::to_string(u.version_index) + '\t' +
           std::to_string(u.block_local_id) + '\t' + std::to_string(u.position) + '\t' + escape_field(u.url) + '\n';
  }
  return out;
}

}  // namespace posthist
