#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "posthist/links.hpp"
#include "posthist/model.hpp"
#include "posthist/stats.hpp"

namespace posthist {

struct Comment {
  PostId post_id = 0;
  Timestamp creation_date{};
  std::optional<UserId> user_id;
};

// Comment table: postId creationDate userId, tab-separated, header row.
std::vector<Comment> read_comment_table(const std::string& text);

struct Comparison {
  double p = 1;                 // two-sided rank-sum p
  std::optional<double> d;      // Cohen's d, absent when undefined
  std::string label;            // Cohen label, or "undefined"
  std::size_t n_a = 0, n_b = 0;
};

// Rank-sum test plus effect size; nullopt if either side is empty.
std::optional<Comparison> compare(const std::vector<double>& a, const std::vector<double>& b);

struct Correlation {
  std::string x, y;
  double rho = 0;
  std::string label;
  std::size_t n = 0;
};

struct ShareGroup {
  std::string name;
  std::vector<std::pair<std::string, long>> counts;  // in display order
  long total() const;
  // count / total, 0 for an empty group.
  double share(std::size_t i) const;
};

struct EvolutionReport {
  std::size_t posts = 0;
  std::size_t edited_posts = 0;
  std::size_t versions = 0;

  // Latest version of every post.
  std::optional<stats::StatsSummary> text_blocks_per_post, code_blocks_per_post;
  double share_posts_without_text = 0, share_posts_without_code = 0;
  // First vs last version of edited posts.
  std::optional<Comparison> text_count_first_last, code_count_first_last;

  std::optional<stats::StatsSummary> text_lines, text_chars, code_lines, code_chars;

  // Lifespan length counting the initial version and versions that changed content.
  std::optional<stats::StatsSummary> text_lifespan_versions, code_lifespan_versions;
  double share_lifespans_edited = 0;

  std::optional<stats::StatsSummary> text_lines_added, text_lines_deleted, code_lines_added, code_lines_deleted;
  double single_line_share = 0, single_line_share_text = 0, single_line_share_code = 0;
  std::optional<Comparison> added_text_vs_code, deleted_text_vs_code;

  // Over versions i >= 2 with an edit; added, changed and removed blocks count
  // as edited.
  std::optional<stats::StatsSummary> edited_text_per_version, edited_code_per_version;
  ShareGroup co_change;  // both / text only / code only

  std::map<int, long> local_id_difference;  // |localId - predLocalId| -> count
  double share_same_local_id = 0;

  ShareGroup timespan_first, timespan_later, timespan_all;  // same day / <=7d / <=365d / >365d
  ShareGroup editors;                                       // author / other / unknown

  std::vector<Correlation> correlations;
  std::optional<stats::StatsSummary> version_count, comment_count;
  std::optional<Comparison> comments_one_vs_more_versions;
  std::optional<Comparison> versions_le1_vs_more_comments;

  bool has_comments = false;
  ShareGroup comment_days;       // per (post, day) category
  ShareGroup comments_on_event_days;
  ShareGroup comment_assignment;  // creation / edit
  ShareGroup comment_side;        // before / after an edit
  std::optional<stats::StatsSummary> hours_before_edit, hours_after_edit;
};

struct AnalysisInput {
  const std::map<PostId, Post>* posts = nullptr;  // matched
  const std::vector<Comment>* comments = nullptr;
  const std::vector<PostReferenceGH>* references = nullptr;
};

EvolutionReport evolution_report(const AnalysisInput& input);

// Sectioned "key: value" text.
std::string format_report(const EvolutionReport& r);
// File name -> tab-separated table.
std::map<std::string, std::string> report_tables(const EvolutionReport& r);

// Bucket of an edit that happened `days` after creation.
std::string_view timespan_bucket(double days);

}  // namespace posthist
