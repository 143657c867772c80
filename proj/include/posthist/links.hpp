#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "posthist/model.hpp"

namespace posthist {

struct ExtractedUrl {
  std::string url;
  std::size_t position = 0;  // offset in scalar values
};

struct PostVersionUrl {
  PostId post_id = 0;
  int version_index = 0;
  int block_local_id = 0;
  std::string url;
  std::size_t position = 0;
};

enum class PostKind { Question, Answer };

std::string_view to_string(PostKind k);

struct SharingLink {
  std::string link;  // https://stackoverflow.com/q/<id> or /a/<id>
  PostId post_id = 0;
  PostKind kind = PostKind::Question;
  bool operator==(const SharingLink&) const = default;
};

struct PostReferenceGH {
  std::string repo_name;
  std::string branch_filepath;
  int line_number = 0;
  std::string raw_url;
  std::string sharing_link;
  PostId post_id = 0;
  PostKind kind = PostKind::Question;
  bool operator==(const PostReferenceGH&) const = default;
};

// http(s) URLs in text, trailing .,;:)]}"' stripped, in offset order.
std::vector<ExtractedUrl> extract_urls(std::string_view text);

// URLs of every text block of every version; code blocks are skipped.
std::vector<PostVersionUrl> extract_post_urls(const Post& post);

// Maps question, answer and short links to the sharing form. Links to users,
// tags and other pages yield nullopt.
std::optional<SharingLink> normalize_so_link(std::string_view url);

// Applies (?i:https?://stackoverflow\.com/[^\s)\."]*) to one line.
std::vector<std::string> find_so_links(std::string_view line);

struct SourceFile {
  std::string repo_name;
  std::string path;
  std::vector<std::string> lines;
};

std::vector<PostReferenceGH> scan_file(const SourceFile& file);

struct ScanResult {
  std::vector<PostReferenceGH> references;
  std::vector<std::string> warnings;
};

// Walks a directory tree; the first path component below root names the
// repository. Binary files (NUL in the first 8 KiB) are skipped silently,
// unreadable ones with a warning.
ScanResult scan_directory(const std::string& root, unsigned parallelism = 1);

std::string write_reference_table(const std::vector<PostReferenceGH>& refs);
std::vector<PostReferenceGH> read_reference_table(const std::string& text);

}  // namespace posthist
