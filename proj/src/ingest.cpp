#include "posthist/ingest.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "posthist/log.hpp"

namespace posthist {

namespace {

constexpr const char* kRecordFields[] = {"recordId", "postId", "historyTypeId",
                                         "creationDate", "userId", "body"};

std::int64_t require_int(std::string_view raw, std::size_t row, const char* field) {
  if (trim(raw).empty()) throw IngestError(row, field, std::string("missing ") + field);
  const auto v = parse_int(raw);
  if (!v) throw IngestError(row, field, std::string("malformed ") + field + " '" + std::string(raw) + "'");
  return *v;
}

std::optional<std::int64_t> optional_int(std::string_view raw, std::size_t row, const char* field) {
  if (trim(raw).empty()) return std::nullopt;
  const auto v = parse_int(raw);
  if (!v) throw IngestError(row, field, std::string("malformed ") + field + " '" + std::string(raw) + "'");
  return v;
}

Timestamp require_time(std::string_view raw, std::size_t row, const char* field) {
  if (trim(raw).empty()) throw IngestError(row, field, std::string("missing ") + field);
  try {
    return parse_iso8601(raw);
  } catch (const TimeFormatError& e) {
    throw IngestError(row, field, e.what());
  }
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace

std::vector<PostHistoryRecord> parse_post_history(std::istream& in) {
  std::vector<PostHistoryRecord> records;
  std::unordered_set<std::int64_t> seen_ids;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    const std::string_view view = strip_cr(line);
    if (trim(view).empty()) continue;
    const auto fields = split_tabs(view);
    if (fields.size() < 6) {
      const std::size_t missing = fields.size();
      throw IngestError(row, kRecordFields[missing],
                        "expected 6 tab-separated fields, got " + std::to_string(fields.size()) +
                            " (missing " + kRecordFields[missing] + ")");
    }
    if (fields.size() > 6) {
      throw IngestError(row, "", "expected 6 tab-separated fields, got " + std::to_string(fields.size()));
    }
    PostHistoryRecord r;
    r.row = row;
    r.record_id = require_int(fields[0], row, "recordId");
    if (!seen_ids.insert(r.record_id).second) {
      throw IngestError(row, "recordId", "duplicate recordId " + std::to_string(r.record_id));
    }
    r.post_id = require_int(fields[1], row, "postId");
    r.history_type_id = static_cast<int>(require_int(fields[2], row, "historyTypeId"));
    r.creation_date = require_time(fields[3], row, "creationDate");
    r.user_id = optional_int(fields[4], row, "userId");
    r.text = unescape_field(fields[5]);
    r.flagged = !is_content_type(r.history_type_id);
    if (!r.flagged && r.text.empty()) throw IngestError(row, "body", "missing body");
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<PostHistoryRecord> parse_post_history(const std::string& text) {
  std::istringstream in(text);
  return parse_post_history(in);
}

VersionChains build_version_chains(const std::vector<PostHistoryRecord>& records) {
  VersionChains result;
  std::map<PostId, std::vector<const PostHistoryRecord*>> by_post;
  for (const auto& r : records) {
    if (is_content_type(r.history_type_id)) by_post[r.post_id].push_back(&r);
  }
  for (auto& [post_id, recs] : by_post) {
    std::sort(recs.begin(), recs.end(), [](const PostHistoryRecord* a, const PostHistoryRecord* b) {
      if (a->creation_date != b->creation_date) return a->creation_date < b->creation_date;
      return a->record_id < b->record_id;
    });
    const bool has_initial = std::any_of(recs.begin(), recs.end(), [](const PostHistoryRecord* r) {
      return r->history_type_id == kInitialBody;
    });
    if (!has_initial) {
      std::string w = "post " + std::to_string(post_id) + " has no Initial Body record; chain built from " +
                      std::to_string(recs.size()) + " remaining record(s)";
      log::warn(w);
      result.warnings.push_back(std::move(w));
    }
    Post post;
    post.id = post_id;
    const int n = static_cast<int>(recs.size());
    for (int i = 0; i < n; ++i) {
      const auto& r = *recs[i];
      PostVersion v;
      v.post_id = post_id;
      v.version_index = i + 1;
      v.source_record_id = r.record_id;
      v.history_type_id = r.history_type_id;
      v.creation_date = r.creation_date;
      v.editor_user_id = r.user_id;
      if (i > 0) v.predecessor_index = i;
      if (i + 1 < n) v.successor_index = i + 2;
      v.body = r.text;
      post.versions.push_back(std::move(v));
    }
    result.posts.emplace(post_id, std::move(post));
  }
  return result;
}

namespace {

std::string opt_to_string(const std::optional<std::int64_t>& v) {
  return v ? std::to_string(*v) : std::string();
}

}  // namespace

std::string write_post_version_table(const std::map<PostId, Post>& posts) {
  std::string out =
      "postId\tversionIndex\trecordId\thistoryTypeId\tcreationDate\tuserId\tpredIndex\tsuccIndex\tbody\n";
  for (const auto& [id, post] : posts) {
    for (const auto& v : post.versions) {
      out += std::to_string(v.post_id);
      out += '\t';
      out += std::to_string(v.version_index);
      out += '\t';
      out += std::to_string(v.source_record_id);
      out += '\t';
      out += std::to_string(v.history_type_id);
      out += '\t';
      out += format_iso8601(v.creation_date);
      out += '\t';
      out += opt_to_string(v.editor_user_id);
      out += '\t';
      out += v.predecessor_index ? std::to_string(*v.predecessor_index) : "";
      out += '\t';
      out += v.successor_index ? std::to_string(*v.successor_index) : "";
      out += '\t';
      out += escape_field(v.body);
      out += '\n';
    }
  }
  return out;
}

std::map<PostId, Post> read_post_version_table(const std::string& text) {
  std::map<PostId, Post> posts;
  std::istringstream in(text);
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    const std::string_view view = strip_cr(line);
    if (row == 1 && view.rfind("postId\t", 0) == 0) continue;
    if (trim(view).empty()) continue;
    const auto f = split_tabs(view);
    if (f.size() != 9) throw IngestError(row, "", "PostVersion row needs 9 fields");
    PostVersion v;
    v.post_id = require_int(f[0], row, "postId");
    v.version_index = static_cast<int>(require_int(f[1], row, "versionIndex"));
    v.source_record_id = require_int(f[2], row, "recordId");
    v.history_type_id = static_cast<int>(require_int(f[3], row, "historyTypeId"));
    v.creation_date = require_time(f[4], row, "creationDate");
    v.editor_user_id = optional_int(f[5], row, "userId");
    if (auto p = optional_int(f[6], row, "predIndex")) v.predecessor_index = static_cast<int>(*p);
    if (auto s = optional_int(f[7], row, "succIndex")) v.successor_index = static_cast<int>(*s);
    v.body = unescape_field(f[8]);
    auto& post = posts[v.post_id];
    post.id = v.post_id;
    post.versions.push_back(std::move(v));
  }
  for (auto& [id, post] : posts) {
    std::sort(post.versions.begin(), post.versions.end(),
              [](const PostVersion& a, const PostVersion& b) { return a.version_index < b.version_index; });
    for (std::size_t i = 0; i < post.versions.size(); ++i) {
      if (post.versions[i].version_index != static_cast<int>(i + 1)) {
        throw IngestError(0, "versionIndex", "post " + std::to_string(id) + " has a gap in version indices");
      }
    }
  }
  return posts;
}

}  // namespace posthist
