#include "posthist/blockify.hpp"

#include <algorithm>
#include <optional>
#include <regex>

#include "posthist/log.hpp"

namespace posthist {

std::string_view to_string(CodeNotation n) {
  switch (n) {
    case CodeNotation::Indented: return "indented";
    case CodeNotation::Fenced: return "fenced";
    case CodeNotation::StackSnippet: return "stack-snippet";
    case CodeNotation::LanguageTag: return "language-tag";
    case CodeNotation::PreCode: return "pre-code";
    case CodeNotation::Script: return "script";
  }
  return "unknown";
}

namespace {

const std::regex& snippet_begin_re() {
  static const std::regex re(R"(^<!--\s*begin\s+snippet\b[^>]*-->\s*$)", std::regex::icase);
  return re;
}
const std::regex& snippet_end_re() {
  static const std::regex re(R"(^<!--\s*end\s+snippet\s*-->\s*$)", std::regex::icase);
  return re;
}
const std::regex& language_tag_re() {
  static const std::regex re(R"(^<!--\s*language(-all)?\s*:[^>]*-->\s*$)", std::regex::icase);
  return re;
}
const std::regex& list_item_re() {
  static const std::regex re(R"(^ {0,3}([-*+]|[0-9]+[.)])(\s+|$))");
  return re;
}

bool is_blank(std::string_view line) { return trim(line).empty(); }

// Leading whitespace width with tabs advancing to the next multiple of four.
int indent_width(std::string_view line) {
  int width = 0;
  for (char c : line) {
    if (c == ' ') {
      ++width;
    } else if (c == '\t') {
      width += 4 - width % 4;
    } else {
      break;
    }
  }
  return width;
}

std::string_view ltrim(std::string_view s) {
  const auto p = s.find_first_not_of(" \t");
  return p == std::string_view::npos ? std::string_view{} : s.substr(p);
}

// Removes up to `columns` columns of leading indentation.
std::string dedent(std::string_view line, int columns) {
  int width = 0;
  std::size_t i = 0;
  while (i < line.size() && width < columns) {
    if (line[i] == ' ') {
      ++width;
    } else if (line[i] == '\t') {
      const int next = width + (4 - width % 4);
      if (next > columns) {
        // Partially consumed tab: keep the remainder as spaces.
        std::string out(static_cast<std::size_t>(next - columns), ' ');
        out.append(line.substr(i + 1));
        return out;
      }
      width = next;
    } else {
      break;
    }
    ++i;
  }
  return std::string(line.substr(i));
}

bool starts_with_icase(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  return to_lower_ascii(s.substr(0, prefix.size())) == prefix;
}

// "<tag" followed by '>' or whitespace.
bool opens_tag(std::string_view s, std::string_view tag) {
  const std::string open = "<" + std::string(tag);
  if (!starts_with_icase(s, open)) return false;
  if (s.size() == open.size()) return false;
  const char next = s[open.size()];
  return next == '>' || next == ' ' || next == '\t';
}

std::size_t find_icase(std::string_view haystack, std::string_view needle, std::size_t from = 0) {
  const std::string lower = to_lower_ascii(haystack);
  return lower.find(needle, from);
}

// Position just past the first '>' at or after `from`, or npos.
std::size_t past_tag(std::string_view s, std::size_t from) {
  const auto p = s.find('>', from);
  return p == std::string_view::npos ? p : p + 1;
}

bool is_fence_line(std::string_view line) {
  if (indent_width(line) >= 4) return false;
  const std::string_view t = ltrim(line);
  if (t.rfind("```", 0) != 0) return false;
  // An info string may not contain backticks; "```x```" is an inline span.
  const auto ticks_end = t.find_first_not_of('`');
  if (ticks_end == std::string_view::npos) return true;
  return t.find('`', ticks_end) == std::string_view::npos;
}

bool is_closing_fence(std::string_view line, std::size_t open_ticks) {
  if (indent_width(line) >= 4) return false;
  const std::string_view t = trim(line);
  if (t.size() < open_ticks) return false;
  return t.find_first_not_of('`') == std::string_view::npos;
}

struct Fragment {
  BlockType type;
  std::vector<std::string> lines;
  std::vector<CodeNotation> notations;
};

class Extractor {
 public:
  explicit Extractor(std::string_view body) {
    for (auto& l : split_lines(body)) {
      if (!l.empty() && l.back() == '\r') l.pop_back();
      lines_.push_back(std::move(l));
    }
  }

  BlockExtraction run() {
    while (pos_ < lines_.size()) step();
    flush_text();
    return finish();
  }

 private:
  void step() {
    const std::string& line = lines_[pos_];
    if (is_blank(line)) {
      text_.push_back(line);
      prev_blank_ = true;
      ++pos_;
      return;
    }
    const int indent = indent_width(line);
    const std::string_view t = ltrim(line);
    const int code_indent = in_list_ ? 8 : 4;

    if (indent >= code_indent && (prev_blank_ || last_was_code_)) {
      take_indented(code_indent, {CodeNotation::Indented});
      return;
    }
    if (indent < 4) {
      if (is_fence_line(line)) return take_fenced();
      if (std::regex_match(std::string(t), snippet_begin_re())) return take_snippet();
      if (std::regex_match(std::string(t), language_tag_re())) return take_language_tag();
      if (opens_tag(t, "pre")) return take_wrapped("pre", CodeNotation::PreCode);
      if (opens_tag(t, "script")) return take_wrapped("script", CodeNotation::Script);
    }

    if (std::regex_search(line, list_item_re())) {
      in_list_ = true;
    } else if (indent == 0 && prev_blank_) {
      in_list_ = false;
    }
    text_.push_back(line);
    prev_blank_ = false;
    last_was_code_ = false;
    pending_language_tag_ = false;
    ++pos_;
  }

  void take_indented(int columns, std::vector<CodeNotation> notations) {
    std::vector<std::string> code;
    while (pos_ < lines_.size()) {
      const std::string& l = lines_[pos_];
      if (is_blank(l)) {
        // Blank lines continue the block only if more indented code follows.
        std::size_t k = pos_;
        while (k < lines_.size() && is_blank(lines_[k])) ++k;
        if (k < lines_.size() && indent_width(lines_[k]) >= columns) {
          for (; pos_ < k; ++pos_) code.emplace_back();
          continue;
        }
        break;
      }
      if (indent_width(l) < columns) break;
      code.push_back(dedent(l, columns));
      ++pos_;
    }
    push_code(std::move(code), std::move(notations));
  }

  void take_fenced() {
    const std::string& open = lines_[pos_];
    const int open_indent = indent_width(open);
    const std::string_view t = ltrim(open);
    const std::size_t ticks = t.find_first_not_of('`') == std::string_view::npos ? t.size() : t.find_first_not_of('`');
    ++pos_;
    std::vector<std::string> code;
    bool closed = false;
    while (pos_ < lines_.size()) {
      if (is_closing_fence(lines_[pos_], ticks)) {
        closed = true;
        ++pos_;
        break;
      }
      code.push_back(dedent(lines_[pos_], open_indent));
      ++pos_;
    }
    if (!closed) warn("unterminated code fence; treating the rest of the body as code");
    push_code(std::move(code), take_pending({CodeNotation::Fenced}));
  }

  void take_snippet() {
    ++pos_;
    std::vector<std::string> inner;
    bool closed = false;
    std::vector<CodeNotation> notations{CodeNotation::StackSnippet};
    bool after_tag = false;
    while (pos_ < lines_.size()) {
      const std::string t(trim(lines_[pos_]));
      if (std::regex_match(t, snippet_end_re())) {
        closed = true;
        ++pos_;
        break;
      }
      if (std::regex_match(t, language_tag_re())) {
        if (std::find(notations.begin(), notations.end(), CodeNotation::LanguageTag) == notations.end()) {
          notations.push_back(CodeNotation::LanguageTag);
        }
        // Separates the snippet's parts by exactly one blank line.
        while (!inner.empty() && is_blank(inner.back())) inner.pop_back();
        after_tag = !inner.empty();
      } else if (after_tag && is_blank(lines_[pos_])) {
        // blanks between a tag and the next part collapse into the separator
      } else {
        if (after_tag) inner.emplace_back();
        after_tag = false;
        inner.push_back(dedent(lines_[pos_], 4));
      }
      ++pos_;
    }
    if (!closed) warn("unterminated stack snippet; treating the rest of the body as code");
    push_code(std::move(inner), take_pending(std::move(notations)));
  }

  void take_language_tag() {
    ++pos_;
    pending_language_tag_ = true;
    // The tag may directly precede an indented block without a blank line.
    prev_blank_ = true;
  }

  void take_wrapped(std::string_view tag, CodeNotation notation) {
    const std::string close = "</" + std::string(tag) + ">";
    std::string joined;
    std::size_t start = pos_;
    std::size_t end_line = lines_.size();
    std::size_t close_pos = std::string::npos;
    for (std::size_t k = start; k < lines_.size(); ++k) {
      const std::size_t offset = joined.size() + (k > start ? 1 : 0);
      if (k > start) joined.push_back('\n');
      joined += lines_[k];
      const auto found = find_icase(joined, close, offset);
      if (found != std::string::npos) {
        end_line = k;
        close_pos = found;
        break;
      }
    }
    std::string trailing;
    std::string inner;
    const std::size_t open_start = joined.find('<');
    std::size_t body_start = past_tag(joined, open_start);
    if (body_start == std::string::npos) body_start = joined.size();
    if (close_pos == std::string::npos) {
      warn("unterminated <" + std::string(tag) + "> block; treating the rest of the body as code");
      inner = joined.substr(body_start);
      pos_ = lines_.size();
    } else {
      inner = joined.substr(body_start, close_pos - std::min(body_start, close_pos));
      trailing = std::string(trim(joined.substr(close_pos + close.size())));
      pos_ = end_line + 1;
    }
    if (tag == "pre") inner = strip_code_tags(inner);
    auto code = split_lines(inner);
    push_code(std::move(code), take_pending({notation}));
    if (!trailing.empty()) {
      text_.push_back(trailing);
      prev_blank_ = false;
      last_was_code_ = false;
    }
  }

  static std::string strip_code_tags(const std::string& inner) {
    std::string s = inner;
    std::string_view lead = ltrim(s);
    if (opens_tag(lead, "code")) {
      const std::size_t at = s.size() - lead.size();
      const auto after = past_tag(s, at);
      if (after != std::string::npos) s.erase(0, after);
    }
    const std::string lower = to_lower_ascii(s);
    const auto close = lower.rfind("</code>");
    if (close != std::string::npos && trim(std::string_view(s).substr(close + 7)).empty()) {
      s.erase(close);
    }
    return s;
  }

  std::vector<CodeNotation> take_pending(std::vector<CodeNotation> notations) {
    if (pending_language_tag_) {
      notations.push_back(CodeNotation::LanguageTag);
      pending_language_tag_ = false;
    }
    return notations;
  }

  void push_code(std::vector<std::string> code, std::vector<CodeNotation> notations) {
    if (pending_language_tag_ && std::find(notations.begin(), notations.end(), CodeNotation::LanguageTag) == notations.end()) {
      notations.push_back(CodeNotation::LanguageTag);
    }
    pending_language_tag_ = false;
    flush_text();
    fragments_.push_back({BlockType::Code, std::move(code), std::move(notations)});
    prev_blank_ = false;
    last_was_code_ = true;
  }

  void flush_text() {
    if (!text_.empty()) {
      fragments_.push_back({BlockType::Text, std::move(text_), {}});
      text_.clear();
    }
  }

  void warn(std::string message) {
    log::warn(message);
    warnings_.push_back(std::move(message));
  }

  static std::optional<std::string> content_of(std::vector<std::string>& lines) {
    std::size_t first = 0;
    while (first < lines.size() && is_blank(lines[first])) ++first;
    std::size_t last = lines.size();
    while (last > first && is_blank(lines[last - 1])) --last;
    if (first == last) return std::nullopt;
    std::vector<std::string> kept(std::make_move_iterator(lines.begin() + first),
                                  std::make_move_iterator(lines.begin() + last));
    return join_lines(kept);
  }

  BlockExtraction finish() {
    BlockExtraction result;
    for (auto& f : fragments_) {
      auto content = content_of(f.lines);
      if (!content) continue;
      if (!result.blocks.empty() && result.blocks.back().type == f.type) {
        auto& prev = result.blocks.back();
        prev.content += "\n\n";
        prev.content += *content;
        for (auto n : f.notations) {
          if (std::find(prev.notations.begin(), prev.notations.end(), n) == prev.notations.end()) {
            prev.notations.push_back(n);
          }
        }
        continue;
      }
      result.blocks.push_back({f.type, std::move(*content), std::move(f.notations)});
    }
    result.warnings = std::move(warnings_);
    return result;
  }

  std::vector<std::string> lines_;
  std::size_t pos_ = 0;
  std::vector<std::string> text_;
  std::vector<Fragment> fragments_;
  std::vector<std::string> warnings_;
  bool prev_blank_ = true;
  bool last_was_code_ = false;
  bool in_list_ = false;
  bool pending_language_tag_ = false;
};

}  // namespace

BlockExtraction extract_blocks(std::string_view body) { return Extractor(body).run(); }

}  // namespace posthist
