#pragma once

#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "posthist/model.hpp"

namespace posthist {

class IngestError : public std::runtime_error {
 public:
  IngestError(std::size_t row, std::string field, const std::string& message)
      : std::runtime_error("row " + std::to_string(row) + ": " + message),
        row_(row),
        field_(std::move(field)) {}

  std::size_t row() const { return row_; }
  // Name of the offending field, empty for whole-row problems.
  const std::string& field() const { return field_; }

 private:
  std::size_t row_;
  std::string field_;
};

// Reads post-history records, one per line:
//   recordId \t postId \t historyTypeId \t creationDate \t userId? \t body
// The body uses the escaping of escape_field(). Blank lines are skipped.
std::vector<PostHistoryRecord> parse_post_history(std::istream& in);
std::vector<PostHistoryRecord> parse_post_history(const std::string& text);

struct VersionChains {
  std::map<PostId, Post> posts;
  std::vector<std::string> warnings;
};

// Keeps content records (types 2, 5, 8), orders them by creation date with
// record id as tie-breaker and links predecessors and successors.
VersionChains build_version_chains(const std::vector<PostHistoryRecord>& records);

// PostVersion table: header line followed by
//   postId versionIndex recordId historyTypeId creationDate userId predIndex succIndex body
std::string write_post_version_table(const std::map<PostId, Post>& posts);
std::map<PostId, Post> read_post_version_table(const std::string& text);

}  // namespace posthist
