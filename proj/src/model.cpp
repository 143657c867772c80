#include "posthist/model.hpp"

namespace posthist {

std::string_view to_string(BlockType t) { return t == BlockType::Text ? "text" : "code"; }

std::optional<BlockType> parse_block_type(std::string_view s) {
  const std::string v = to_lower_ascii(trim(s));
  if (v == "text" || v == "1") return BlockType::Text;
  if (v == "code" || v == "2") return BlockType::Code;
  return std::nullopt;
}

}  // namespace posthist
