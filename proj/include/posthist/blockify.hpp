#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "posthist/model.hpp"

namespace posthist {

// Code-block notations recognized in post bodies.
enum class CodeNotation {
  Indented,      // four spaces (or a tab)
  Fenced,        // ``` ... ```
  StackSnippet,  // <!-- begin snippet --> ... <!-- end snippet -->
  LanguageTag,   // <!-- language: ... --> in front of a code block
  PreCode,       // <pre><code> ... </code></pre>
  Script,        // <script> ... </script>
};

std::string_view to_string(CodeNotation n);

struct ExtractedBlock {
  BlockType type = BlockType::Text;
  std::string content;
  // Notations that contributed to a code block; empty for text.
  std::vector<CodeNotation> notations;
};

struct BlockExtraction {
  std::vector<ExtractedBlock> blocks;
  std::vector<std::string> warnings;
};

// Splits a Markdown body into alternating text and code blocks. Marker syntax
// is stripped from code, inline code stays in text, whitespace-only text
// between code blocks is dropped and adjacent blocks of one type are merged.
BlockExtraction extract_blocks(std::string_view body);

}  // namespace posthist
