#include "posthist/analyze.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

#include "posthist/diff.hpp"
#include "posthist/matcher.hpp"

namespace posthist {

namespace {

using std::chrono::days;
using std::chrono::duration;

constexpr double kMsPerDay = 86'400'000.0;
constexpr double kMsPerHour = 3'600'000.0;

std::optional<stats::StatsSummary> summary(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  return stats::describe(v);
}

ShareGroup group(std::string name, std::vector<std::string> categories) {
  ShareGroup g;
  g.name = std::move(name);
  for (auto& c : categories) g.counts.emplace_back(std::move(c), 0);
  return g;
}

void bump(ShareGroup& g, std::string_view category) {
  for (auto& [name, count] : g.counts) {
    if (name == category) {
      ++count;
      return;
    }
  }
  g.counts.emplace_back(std::string(category), 1);
}

double ratio(double a, double b) { return b == 0 ? 0.0 : a / b; }

double elapsed_ms(Timestamp from, Timestamp to) { return static_cast<double>((to - from).count()); }

int line_count(const std::string& s) { return static_cast<int>(split_lines(s).size()); }

const PostBlockVersion& block_at(const Post& post, int version, int local) {
  return post.versions[static_cast<std::size_t>(version - 1)].blocks[static_cast<std::size_t>(local - 1)];
}

}  // namespace

long ShareGroup::total() const {
  long t = 0;
  for (const auto& [name, c] : counts) t += c;
  return t;
}

double ShareGroup::share(std::size_t i) const { return ratio(static_cast<double>(counts.at(i).second), total()); }

std::string_view timespan_bucket(double days_elapsed) {
  if (days_elapsed <= 1.0) return "same day";
  if (days_elapsed <= 7.0) return "within one week";
  if (days_elapsed <= 365.0) return "within one year";
  return "more than one year";
}

std::optional<Comparison> compare(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) return std::nullopt;
  Comparison c;
  c.n_a = a.size();
  c.n_b = b.size();
  c.p = stats::wilcoxon_ranksum(a, b).p;
  try {
    c.d = stats::cohens_d(a, b);
    c.label = std::string(stats::cohen_label(*c.d));
  } catch (const stats::StatsError&) {
    c.label = "undefined";
  }
  return c;
}

std::vector<Comment> read_comment_table(const std::string& text) {
  std::vector<Comment> out;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const auto f = split_tabs(line);
    if (i == 0 && !f.empty() && f[0] == "postId") continue;
    if (f.size() != 3) throw std::runtime_error("comment row " + std::to_string(i + 1) + ": expected 3 fields");
    Comment c;
    const auto post = parse_int(f[0]);
    if (!post) throw std::runtime_error("comment row " + std::to_string(i + 1) + ": bad postId");
    c.post_id = *post;
    try {
      c.creation_date = parse_iso8601(f[1]);
    } catch (const TimeFormatError& e) {
      throw std::runtime_error("comment row " + std::to_string(i + 1) + ": " + e.what());
    }
    if (!f[2].empty()) {
      const auto user = parse_int(f[2]);
      if (!user) throw std::runtime_error("comment row " + std::to_string(i + 1) + ": bad userId");
      c.user_id = *user;
    }
    out.push_back(c);
  }
  return out;
}

namespace {

void block_measures(const std::map<PostId, Post>& posts, EvolutionReport& r) {
  std::vector<double> text_counts, code_counts, text_lines, text_chars, code_lines, code_chars;
  std::vector<double> first_text, last_text, first_code, last_code;
  long without_text = 0, without_code = 0;
  for (const auto& [id, post] : posts) {
    if (post.versions.empty()) continue;
    auto count = [](const PostVersion& v, BlockType t) {
      return static_cast<double>(
          std::count_if(v.blocks.begin(), v.blocks.end(), [t](const PostBlockVersion& b) { return b.type == t; }));
    };
    const auto& last = post.versions.back();
    const double nt = count(last, BlockType::Text);
    const double nc = count(last, BlockType::Code);
    text_counts.push_back(nt);
    code_counts.push_back(nc);
    without_text += nt == 0;
    without_code += nc == 0;
    for (const auto& b : last.blocks) {
      const auto lines = static_cast<double>(line_count(b.content));
      const auto chars = static_cast<double>(utf8_length(b.content));
      if (b.type == BlockType::Text) {
        text_lines.push_back(lines);
        text_chars.push_back(chars);
      } else {
        code_lines.push_back(lines);
        code_chars.push_back(chars);
      }
    }
    if (post.versions.size() > 1) {
      first_text.push_back(count(post.versions.front(), BlockType::Text));
      first_code.push_back(count(post.versions.front(), BlockType::Code));
      last_text.push_back(nt);
      last_code.push_back(nc);
    }
  }
  r.text_blocks_per_post = summary(text_counts);
  r.code_blocks_per_post = summary(code_counts);
  r.share_posts_without_text = ratio(without_text, static_cast<double>(text_counts.size()));
  r.share_posts_without_code = ratio(without_code, static_cast<double>(code_counts.size()));
  r.text_count_first_last = compare(first_text, last_text);
  r.code_count_first_last = compare(first_code, last_code);
  r.text_lines = summary(text_lines);
  r.text_chars = summary(text_chars);
  r.code_lines = summary(code_lines);
  r.code_chars = summary(code_chars);
}

void lifespan_measures(const std::map<PostId, Post>& posts, EvolutionReport& r) {
  std::vector<double> text_len, code_len;
  long edited = 0, total = 0;
  for (const auto& [id, post] : posts) {
    for (const auto& span : build_lifespans(post)) {
      int versions = 1;
      for (std::size_t k = 1; k < span.members.size(); ++k) {
        const auto& a = block_at(post, span.members[k - 1].version_index, span.members[k - 1].local_id);
        const auto& b = block_at(post, span.members[k].version_index, span.members[k].local_id);
        if (a.content != b.content) ++versions;
      }
      (span.type == BlockType::Text ? text_len : code_len).push_back(versions);
      ++total;
      edited += versions > 1;
    }
  }
  r.text_lifespan_versions = summary(text_len);
  r.code_lifespan_versions = summary(code_len);
  r.share_lifespans_edited = ratio(edited, total);
}

void edit_measures(const std::map<PostId, Post>& posts, EvolutionReport& r) {
  std::vector<double> added[2], deleted[2];
  long single[2] = {0, 0};
  std::vector<double> edited_text, edited_code;
  r.co_change = group("co-change", {"text and code", "text only", "code only"});
  for (const auto& [id, post] : posts) {
    for (std::size_t i = 1; i < post.versions.size(); ++i) {
      const auto& prev = post.versions[i - 1].blocks;
      std::vector<bool> has_successor(prev.size(), false);
      int changed[2] = {0, 0};
      for (const auto& b : post.versions[i].blocks) {
        const int t = b.type == BlockType::Text ? 0 : 1;
        if (!b.predecessor_local_id) {
          ++changed[t];
          continue;
        }
        const auto& p = prev[static_cast<std::size_t>(*b.predecessor_local_id - 1)];
        has_successor[static_cast<std::size_t>(*b.predecessor_local_id - 1)] = true;
        r.local_id_difference[std::abs(b.local_id - p.local_id)] += 1;
        if (p.content == b.content) continue;
        ++changed[t];
        const auto s = diff_stats(line_diff(p.content, b.content));
        added[t].push_back(s.added);
        deleted[t].push_back(s.deleted);
        single[t] += std::max(s.added, s.deleted) == 1;
      }
      for (std::size_t l = 0; l < prev.size(); ++l) {
        if (!has_successor[l]) ++changed[prev[l].type == BlockType::Text ? 0 : 1];
      }
      if (changed[0] + changed[1] == 0) continue;
      edited_text.push_back(changed[0]);
      edited_code.push_back(changed[1]);
      bump(r.co_change, changed[0] && changed[1] ? "text and code" : changed[0] ? "text only" : "code only");
    }
  }
  r.text_lines_added = summary(added[0]);
  r.text_lines_deleted = summary(deleted[0]);
  r.code_lines_added = summary(added[1]);
  r.code_lines_deleted = summary(deleted[1]);
  const double n_text = static_cast<double>(added[0].size());
  const double n_code = static_cast<double>(added[1].size());
  r.single_line_share = ratio(single[0] + single[1], n_text + n_code);
  r.single_line_share_text = ratio(single[0], n_text);
  r.single_line_share_code = ratio(single[1], n_code);
  r.added_text_vs_code = compare(added[0], added[1]);
  r.deleted_text_vs_code = compare(deleted[0], deleted[1]);
  r.edited_text_per_version = summary(edited_text);
  r.edited_code_per_version = summary(edited_code);

  long links = 0;
  for (const auto& [d, c] : r.local_id_difference) links += c;
  auto zero = r.local_id_difference.find(0);
  r.share_same_local_id = ratio(zero == r.local_id_difference.end() ? 0 : zero->second, links);
}

void timing_measures(const std::map<PostId, Post>& posts, EvolutionReport& r) {
  const std::vector<std::string> buckets = {"same day", "within one week", "within one year", "more than one year"};
  r.timespan_first = group("first edit", buckets);
  r.timespan_later = group("later edits", buckets);
  r.timespan_all = group("all edits", buckets);
  r.editors = group("editors", {"author", "other", "unknown"});
  for (const auto& [id, post] : posts) {
    if (post.versions.empty()) continue;
    const auto& created = post.versions.front();
    for (std::size_t i = 1; i < post.versions.size(); ++i) {
      const auto& v = post.versions[i];
      const auto bucket = timespan_bucket(elapsed_ms(created.creation_date, v.creation_date) / kMsPerDay);
      bump(i == 1 ? r.timespan_first : r.timespan_later, bucket);
      bump(r.timespan_all, bucket);
      if (!created.editor_user_id || !v.editor_user_id) {
        bump(r.editors, "unknown");
      } else {
        bump(r.editors, *created.editor_user_id == *v.editor_user_id ? "author" : "other");
      }
    }
  }
}

void correlation_measures(const AnalysisInput& in, EvolutionReport& r) {
  const auto& posts = *in.posts;
  Timestamp reference{};
  for (const auto& [id, post] : posts) {
    for (const auto& v : post.versions) reference = std::max(reference, v.creation_date);
  }
  std::map<PostId, long> comments;
  if (in.comments) {
    for (const auto& c : *in.comments) {
      reference = std::max(reference, c.creation_date);
      if (posts.count(c.post_id)) comments[c.post_id] += 1;
    }
  }
  std::map<PostId, std::set<std::pair<std::string, std::string>>> files;
  if (in.references) {
    for (const auto& ref : *in.references) files[ref.post_id].insert({ref.repo_name, ref.branch_filepath});
  }

  std::vector<double> versions, age, ncomments;
  std::vector<double> gh_versions, gh_age, gh_comments, gh_matches;
  for (const auto& [id, post] : posts) {
    if (post.versions.empty()) continue;
    const double v = static_cast<double>(post.versions.size());
    const double a = elapsed_ms(post.versions.front().creation_date, reference) / kMsPerDay;
    const double c = static_cast<double>(comments.count(id) ? comments.at(id) : 0);
    versions.push_back(v);
    age.push_back(a);
    ncomments.push_back(c);
    if (auto it = files.find(id); it != files.end()) {
      gh_versions.push_back(v);
      gh_age.push_back(a);
      gh_comments.push_back(c);
      gh_matches.push_back(static_cast<double>(it->second.size()));
    }
  }
  auto add = [&](const char* x, const char* y, const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() < 2) return;
    const double rho = stats::spearman(a, b);
    r.correlations.push_back({x, y, rho, std::string(stats::hinkle_label(rho)), a.size()});
  };
  add("Versions", "Age", versions, age);
  if (in.comments) {
    add("Versions", "Comments", versions, ncomments);
    add("Age", "Comments", age, ncomments);
  }
  if (in.references) {
    add("GHMatches", "Versions", gh_matches, gh_versions);
    add("GHMatches", "Age", gh_matches, gh_age);
    if (in.comments) add("GHMatches", "Comments", gh_matches, gh_comments);
  }

  r.version_count = summary(versions);
  if (in.comments) {
    r.comment_count = summary(ncomments);
    std::vector<double> one, more, le1, gt1;
    for (std::size_t i = 0; i < versions.size(); ++i) {
      (versions[i] == 1 ? one : more).push_back(ncomments[i]);
      (ncomments[i] <= 1 ? le1 : gt1).push_back(versions[i]);
    }
    r.comments_one_vs_more_versions = compare(one, more);
    r.versions_le1_vs_more_comments = compare(le1, gt1);
  }
}

void comment_timing(const AnalysisInput& in, EvolutionReport& r) {
  r.comment_days = group("post days", {"created or edited and commented", "only created", "only edited",
                                       "created and edited", "only commented"});
  r.comments_on_event_days = group("comments", {"on a creation or edit day", "on other days"});
  r.comment_assignment = group("closest event", {"creation", "edit"});
  r.comment_side = group("relative to edit", {"before", "after"});

  struct Event {
    Timestamp time;
    bool creation;
  };
  struct Day {
    std::vector<Event> events;
    std::vector<Timestamp> comments;
  };
  std::map<std::pair<PostId, days>, Day> by_day;
  for (const auto& [id, post] : *in.posts) {
    for (std::size_t i = 0; i < post.versions.size(); ++i) {
      const auto t = post.versions[i].creation_date;
      by_day[{id, std::chrono::floor<days>(t).time_since_epoch()}].events.push_back({t, i == 0});
    }
  }
  for (const auto& c : *in.comments) {
    if (!in.posts->count(c.post_id)) continue;
    by_day[{c.post_id, std::chrono::floor<days>(c.creation_date).time_since_epoch()}].comments.push_back(
        c.creation_date);
  }

  std::vector<double> before, after;
  for (auto& [key, day] : by_day) {
    const bool created = std::any_of(day.events.begin(), day.events.end(), [](const Event& e) { return e.creation; });
    const bool edited = std::any_of(day.events.begin(), day.events.end(), [](const Event& e) { return !e.creation; });
    const bool commented = !day.comments.empty();
    if (commented && (created || edited)) {
      bump(r.comment_days, "created or edited and commented");
    } else if (commented) {
      bump(r.comment_days, "only commented");
    } else if (created && edited) {
      bump(r.comment_days, "created and edited");
    } else if (created) {
      bump(r.comment_days, "only created");
    } else {
      bump(r.comment_days, "only edited");
    }

    std::stable_sort(day.events.begin(), day.events.end(),
                     [](const Event& a, const Event& b) { return a.time < b.time; });
    for (const auto t : day.comments) {
      if (day.events.empty()) {
        bump(r.comments_on_event_days, "on other days");
        continue;
      }
      bump(r.comments_on_event_days, "on a creation or edit day");
      // Closest event; the earlier one wins an exact tie.
      const Event* best = nullptr;
      double best_distance = 0;
      for (const auto& e : day.events) {
        const double d = std::fabs(elapsed_ms(e.time, t));
        if (!best || d < best_distance) {
          best = &e;
          best_distance = d;
        }
      }
      if (best->creation) {
        bump(r.comment_assignment, "creation");
        continue;
      }
      bump(r.comment_assignment, "edit");
      const double hours = elapsed_ms(best->time, t) / kMsPerHour;
      if (hours < 0) {
        bump(r.comment_side, "before");
        before.push_back(hours);
      } else {
        bump(r.comment_side, "after");
        after.push_back(hours);
      }
    }
  }
  r.hours_before_edit = summary(before);
  r.hours_after_edit = summary(after);
}

}  // namespace

EvolutionReport evolution_report(const AnalysisInput& in) {
  if (!in.posts) throw std::invalid_argument("evolution_report needs posts");
  EvolutionReport r;
  r.posts = in.posts->size();
  for (const auto& [id, post] : *in.posts) {
    r.versions += post.versions.size();
    r.edited_posts += post.versions.size() > 1;
  }
  block_measures(*in.posts, r);
  lifespan_measures(*in.posts, r);
  edit_measures(*in.posts, r);
  timing_measures(*in.posts, r);
  correlation_measures(in, r);
  if (in.comments) {
    r.has_comments = true;
    comment_timing(in, r);
  }
  return r;
}

// ---- output -------------------------------------------------------------

namespace {

std::string num(double v) { return format_double(v, 4); }

void put_summary(std::string& out, std::string_view key, const std::optional<stats::StatsSummary>& s) {
  out += std::string(key) + ": ";
  if (!s) {
    out += "n=0\n";
    return;
  }
  out += "n=" + std::to_string(s->n) + " M=" + num(s->mean) + " SD=" + num(s->sd) + " Mdn=" + num(s->median) +
         " Q1=" + num(s->q1) + " Q3=" + num(s->q3) + "\n";
}

void put_comparison(std::string& out, std::string_view key, const std::optional<Comparison>& c) {
  out += std::string(key) + ": ";
  if (!c) {
    out += "n/a\n";
    return;
  }
  out += "p=" + format_double(c->p, 6) + " d=" + (c->d ? num(*c->d) : std::string("undefined")) + " (" + c->label +
         ") n=" + std::to_string(c->n_a) + "/" + std::to_string(c->n_b) + "\n";
}

void put_group(std::string& out, const ShareGroup& g) {
  out += g.name + ":";
  for (std::size_t i = 0; i < g.counts.size(); ++i) {
    out += " " + g.counts[i].first + "=" + std::to_string(g.counts[i].second) + " (" + num(g.share(i)) + ")";
  }
  out += "\n";
}

std::vector<std::pair<std::string, const std::optional<stats::StatsSummary>*>> summaries(const EvolutionReport& r) {
  return {{"text blocks per post", &r.text_blocks_per_post},
          {"code blocks per post", &r.code_blocks_per_post},
          {"text block lines", &r.text_lines},
          {"text block characters", &r.text_chars},
          {"code block lines", &r.code_lines},
          {"code block characters", &r.code_chars},
          {"text lifespan versions", &r.text_lifespan_versions},
          {"code lifespan versions", &r.code_lifespan_versions},
          {"text lines added", &r.text_lines_added},
          {"text lines deleted", &r.text_lines_deleted},
          {"code lines added", &r.code_lines_added},
          {"code lines deleted", &r.code_lines_deleted},
          {"edited text blocks per version", &r.edited_text_per_version},
          {"edited code blocks per version", &r.edited_code_per_version},
          {"versions per post", &r.version_count},
          {"comments per post", &r.comment_count},
          {"hours before edit", &r.hours_before_edit},
          {"hours after edit", &r.hours_after_edit}};
}

std::vector<std::pair<std::string, const std::optional<Comparison>*>> comparisons(const EvolutionReport& r) {
  return {{"text blocks first vs last version", &r.text_count_first_last},
          {"code blocks first vs last version", &r.code_count_first_last},
          {"lines added text vs code", &r.added_text_vs_code},
          {"lines deleted text vs code", &r.deleted_text_vs_code},
          {"comments: one version vs more", &r.comments_one_vs_more_versions},
          {"versions: at most one comment vs more", &r.versions_le1_vs_more_comments}};
}

std::vector<const ShareGroup*> groups(const EvolutionReport& r) {
  std::vector<const ShareGroup*> g = {&r.co_change, &r.timespan_first, &r.timespan_later, &r.timespan_all,
                                      &r.editors};
  if (r.has_comments) {
    for (const auto* x : {&r.comment_days, &r.comments_on_event_days, &r.comment_assignment, &r.comment_side}) {
      g.push_back(x);
    }
  }
  return g;
}

}  // namespace

std::string format_report(const EvolutionReport& r) {
  std::string out;
  out += "[corpus]\n";
  out += "posts: " + std::to_string(r.posts) + "\n";
  out += "edited posts: " + std::to_string(r.edited_posts) + "\n";
  out += "versions: " + std::to_string(r.versions) + "\n";

  out += "\n[blocks]\n";
  for (std::size_t i = 0; i < 6; ++i) put_summary(out, summaries(r)[i].first, *summaries(r)[i].second);
  out += "posts without text blocks: " + num(r.share_posts_without_text) + "\n";
  out += "posts without code blocks: " + num(r.share_posts_without_code) + "\n";
  put_comparison(out, "text blocks first vs last version", r.text_count_first_last);
  put_comparison(out, "code blocks first vs last version", r.code_count_first_last);

  out += "\n[lifespans]\n";
  put_summary(out, "text lifespan versions", r.text_lifespan_versions);
  put_summary(out, "code lifespan versions", r.code_lifespan_versions);
  out += "lifespans edited after creation: " + num(r.share_lifespans_edited) + "\n";

  out += "\n[edits]\n";
  for (std::size_t i = 8; i < 14; ++i) put_summary(out, summaries(r)[i].first, *summaries(r)[i].second);
  out += "single-line edits: " + num(r.single_line_share) + " (text " + num(r.single_line_share_text) + ", code " +
         num(r.single_line_share_code) + ")\n";
  put_comparison(out, "lines added text vs code", r.added_text_vs_code);
  put_comparison(out, "lines deleted text vs code", r.deleted_text_vs_code);
  put_group(out, r.co_change);

  out += "\n[local ids]\n";
  out += "same local id as predecessor: " + num(r.share_same_local_id) + "\n";
  for (const auto& [d, c] : r.local_id_difference) out += "difference " + std::to_string(d) + ": " + std::to_string(c) + "\n";

  out += "\n[timing]\n";
  put_group(out, r.timespan_first);
  put_group(out, r.timespan_later);
  put_group(out, r.timespan_all);
  put_group(out, r.editors);

  out += "\n[correlations]\n";
  for (const auto& c : r.correlations) {
    out += c.x + " ~ " + c.y + ": rho=" + num(c.rho) + " (" + c.label + ") n=" + std::to_string(c.n) + "\n";
  }
  put_summary(out, "versions per post", r.version_count);
  if (r.has_comments) {
    put_summary(out, "comments per post", r.comment_count);
    put_comparison(out, "comments: one version vs more", r.comments_one_vs_more_versions);
    put_comparison(out, "versions: at most one comment vs more", r.versions_le1_vs_more_comments);

    out += "\n[comments]\n";
    put_group(out, r.comment_days);
    put_group(out, r.comments_on_event_days);
    put_group(out, r.comment_assignment);
    put_group(out, r.comment_side);
    put_summary(out, "hours before edit", r.hours_before_edit);
    put_summary(out, "hours after edit", r.hours_after_edit);
  }
  return out;
}

std::map<std::string, std::string> report_tables(const EvolutionReport& r) {
  std::map<std::string, std::string> out;

  std::string s = "measure\tn\tmean\tsd\tmedian\tq1\tq3\n";
  for (const auto& [name, summ] : summaries(r)) {
    if (!*summ) continue;
    const auto& x = **summ;
    s += name + '\t' + std::to_string(x.n) + '\t' + num(x.mean) + '\t' + num(x.sd) + '\t' + num(x.median) + '\t' +
         num(x.q1) + '\t' + num(x.q3) + '\n';
  }
  out["summaries.tsv"] = s;

  std::string g = "group\tcategory\tcount\tshare\n";
  for (const auto* grp : groups(r)) {
    for (std::size_t i = 0; i < grp->counts.size(); ++i) {
      g += grp->name + '\t' + grp->counts[i].first + '\t' + std::to_string(grp->counts[i].second) + '\t' +
           num(grp->share(i)) + '\n';
    }
  }
  out["shares.tsv"] = g;

  long links = 0;
  for (const auto& [d, c] : r.local_id_difference) links += c;
  std::string l = "difference\tcount\tshare\n";
  for (const auto& [d, c] : r.local_id_difference) {
    l += std::to_string(d) + '\t' + std::to_string(c) + '\t' + num(ratio(c, links)) + '\n';
  }
  out["local_id_difference.tsv"] = l;

  std::string c = "x\ty\trho\tlabel\tn\n";
  for (const auto& x : r.correlations) {
    c += x.x + '\t' + x.y + '\t' + num(x.rho) + '\t' + x.label + '\t' + std::to_string(x.n) + '\n';
  }
  out["correlations.tsv"] = c;

  std::string k = "comparison\tp\td\tlabel\tnA\tnB\n";
  for (const auto& [name, cmp] : comparisons(r)) {
    if (!*cmp) continue;
    const auto& x = **cmp;
    k += name + '\t' + format_double(x.p, 6) + '\t' + (x.d ? num(*x.d) : std::string()) + '\t' + x.label + '\t' +
         std::to_string(x.n_a) + '\t' + std::to_string(x.n_b) + '\n';
  }
  out["comparisons.tsv"] = k;
  return out;
}

}  // namespace posthist
