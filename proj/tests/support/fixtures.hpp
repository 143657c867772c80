#pragma once

// Blockify fixture corpus: NAME.md holds a post body, NAME.expected the
// blocks it must split into:
//
//   !warnings N              optional, number of expected warnings
//   === text | === code n1,n2  block header; notations listed must be reported
//   <content lines>

#include <algorithm>
#include <filesystem>
#include <regex>
#include <string>
#include <vector>

#include "posthist/blockify.hpp"
#include "posthist/text.hpp"

namespace posthist::testing {

struct ExpectedBlock {
  BlockType type = BlockType::Text;
  std::vector<std::string> notations;
  std::string content;
};

struct BlockFixture {
  std::string name;
  std::string body;
  std::vector<ExpectedBlock> blocks;
  std::size_t warnings = 0;
};

inline std::vector<BlockFixture> load_blockify_fixtures(const std::string& dir) {
  std::vector<BlockFixture> out;
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.path().extension() == ".md") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& md : files) {
    BlockFixture f;
    f.name = md.stem().string();
    f.body = read_file(md.string());
    auto expected = md;
    expected.replace_extension(".expected");
    std::vector<std::string> lines = split_lines(read_file(expected.string()));
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    std::vector<std::string> content;
    auto flush = [&] {
      if (f.blocks.empty()) return;
      f.blocks.back().content = join_lines(content);
      content.clear();
    };
    for (const auto& line : lines) {
      if (line.rfind("!warnings ", 0) == 0) {
        f.warnings = std::stoul(line.substr(10));
      } else if (line.rfind("=== ", 0) == 0) {
        flush();
        ExpectedBlock b;
        const auto header = line.substr(4);
        const auto space = header.find(' ');
        b.type = header.substr(0, space) == "code" ? BlockType::Code : BlockType::Text;
        if (space != std::string::npos) {
          std::string list = header.substr(space + 1);
          std::size_t start = 0;
          while (start <= list.size()) {
            const auto comma = std::min(list.find(',', start), list.size());
            b.notations.push_back(list.substr(start, comma - start));
            start = comma + 1;
          }
        }
        f.blocks.push_back(std::move(b));
      } else {
        content.push_back(line);
      }
    }
    flush();
    out.push_back(std::move(f));
  }
  return out;
}

// Non-whitespace characters of a body once code-marker syntax is removed.
inline std::string marker_free_characters(const std::string& body) {
  static const std::vector<std::regex> markers = {
      std::regex(R"(<!--\s*(begin|end)\s+snippet[^>]*-->)", std::regex::icase),
      std::regex(R"(<!--\s*language(-all)?\s*:[^>]*-->)", std::regex::icase),
      std::regex(R"(<pre[^>]*>\s*<code[^>]*>)", std::regex::icase),
      std::regex(R"(</code>\s*</pre>)", std::regex::icase),
      std::regex(R"(<script[^>]*>)", std::regex::icase),
      std::regex(R"(</script>)", std::regex::icase),
  };
  std::string s = body;
  for (const auto& re : markers) s = std::regex_replace(s, re, " ");
  // Fence lines outside <pre> wrappers; a fixture with fences inside <pre>
  // keeps them because the wrapper was removed above first.
  std::string out;
  bool in_pre = body.find("<pre") != std::string::npos;
  for (const auto& line : split_lines(s)) {
    const auto t = std::string(trim(line));
    if (!in_pre && t.rfind("```", 0) == 0) continue;
    for (char c : line) {
      if (!is_space(static_cast<unsigned char>(c))) out.push_back(c);
    }
  }
  return out;
}

inline std::string block_characters(const std::vector<ExtractedBlock>& blocks) {
  std::string joined;
  for (const auto& b : blocks) joined += (joined.empty() ? "" : "\n\n") + b.content;
  std::string out;
  for (char c : joined) {
    if (!is_space(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

}  // namespace posthist::testing
