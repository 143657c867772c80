#include "posthist/links.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "posthist/log.hpp"
#include "posthist/parallel.hpp"

namespace posthist {

namespace fs = std::filesystem;

std::string_view to_string(PostKind k) { return k == PostKind::Question ? "question" : "answer"; }

namespace {

bool is_trailing_punct(char c) {
  switch (c) {
    case '.': case ',': case ';': case ':': case ')': case ']': case '}': case '"': case '\'':
      return true;
    default:
      return false;
  }
}

bool all_digits(std::string_view s) {
  return !s.empty() && s.size() <= 18 && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::vector<std::string_view> split_path(std::string_view path) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (start <= path.size()) {
    std::size_t slash = path.find('/', start);
    if (slash == std::string_view::npos) slash = path.size();
    if (slash > start) parts.push_back(path.substr(start, slash - start));
    start = slash + 1;
  }
  return parts;
}

SharingLink make_link(PostId id, PostKind kind) {
  return {std::string("https://stackoverflow.com/") + (kind == PostKind::Question ? "q/" : "a/") + std::to_string(id),
          id, kind};
}

}  // namespace

std::vector<ExtractedUrl> extract_urls(std::string_view text) {
  static const std::regex pattern(R"(https?://\S+)");
  std::vector<ExtractedUrl> out;
  const std::string s(text);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), pattern); it != std::sregex_iterator(); ++it) {
    std::string url = it->str();
    while (!url.empty() && is_trailing_punct(url.back())) url.pop_back();
    // "http://" alone is not a URL.
    if (url.find("://") + 3 >= url.size()) continue;
    const auto byte_pos = static_cast<std::size_t>(it->position());
    out.push_back({std::move(url), utf8_length(text.substr(0, byte_pos))});
  }
  return out;
}

std::vector<PostVersionUrl> extract_post_urls(const Post& post) {
  std::vector<PostVersionUrl> out;
  for (const auto& v : post.versions) {
    for (const auto& b : v.blocks) {
      if (b.type != BlockType::Text) continue;
      for (auto& u : extract_urls(b.content)) {
        out.push_back({post.id, v.version_index, b.local_id, std::move(u.url), u.position});
      }
    }
  }
  return out;
}

std::optional<SharingLink> normalize_so_link(std::string_view url) {
  const std::string lower = to_lower_ascii(url);
  std::string_view rest = lower;
  if (rest.starts_with("https://")) {
    rest.remove_prefix(8);
  } else if (rest.starts_with("http://")) {
    rest.remove_prefix(7);
  } else {
    return std::nullopt;
  }
  if (rest.starts_with("www.")) rest.remove_prefix(4);
  if (!rest.starts_with("stackoverflow.com")) return std::nullopt;
  rest.remove_prefix(17);
  if (!rest.empty() && rest.front() != '/' && rest.front() != '?' && rest.front() != '#') return std::nullopt;

  std::string_view fragment;
  if (auto hash = rest.find('#'); hash != std::string_view::npos) {
    fragment = rest.substr(hash + 1);
    rest = rest.substr(0, hash);
  }
  if (auto q = rest.find('?'); q != std::string_view::npos) rest = rest.substr(0, q);
  const auto parts = split_path(rest);
  if (parts.size() < 2) return std::nullopt;

  if (parts[0] == "a" && all_digits(parts[1])) return make_link(std::stoll(std::string(parts[1])), PostKind::Answer);
  if (parts[0] != "q" && parts[0] != "questions") return std::nullopt;
  if (!all_digits(parts[1])) return std::nullopt;

  if (all_digits(fragment)) return make_link(std::stoll(std::string(fragment)), PostKind::Answer);
  if (parts[0] == "questions" && parts.size() >= 4 && all_digits(parts[3])) {
    return make_link(std::stoll(std::string(parts[3])), PostKind::Answer);
  }
  return make_link(std::stoll(std::string(parts[1])), PostKind::Question);
}

std::vector<std::string> find_so_links(std::string_view line) {
  static const std::regex pattern(R"(https?://stackoverflow\.com/[^\s)\."]*)", std::regex::ECMAScript | std::regex::icase);
  std::vector<std::string> out;
  const std::string s(line);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), pattern); it != std::sregex_iterator(); ++it) {
    out.push_back(it->str());
  }
  return out;
}

std::vector<PostReferenceGH> scan_file(const SourceFile& file) {
  std::vector<PostReferenceGH> out;
  for (std::size_t i = 0; i < file.lines.size(); ++i) {
    for (auto& raw : find_so_links(file.lines[i])) {
      auto link = normalize_so_link(raw);
      if (!link) continue;
      out.push_back({file.repo_name, file.path, static_cast<int>(i + 1), std::move(raw), std::move(link->link),
                     link->post_id, link->kind});
    }
  }
  return out;
}

namespace {

struct FileOutcome {
  std::vector<PostReferenceGH> references;
  std::optional<std::string> warning;
};

FileOutcome scan_path(const fs::path& root, const fs::path& path) {
  FileOutcome outcome;
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    outcome.warning = "cannot read " + path.string();
    return outcome;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    outcome.warning = "cannot read " + path.string();
    return outcome;
  }
  const std::string content = buffer.str();
  const std::string_view head(content.data(), std::min<std::size_t>(content.size(), 8192));
  if (head.find('\0') != std::string_view::npos) {
    log::debug("skipping binary file " + path.string());
    return outcome;
  }

  const fs::path rel = path.lexically_relative(root);
  SourceFile file;
  auto it = rel.begin();
  if (std::distance(rel.begin(), rel.end()) > 1) {
    file.repo_name = it->generic_string();
    fs::path inner;
    for (++it; it != rel.end(); ++it) inner /= *it;
    file.path = inner.generic_string();
  } else {
    file.repo_name = root.filename().generic_string();
    file.path = rel.generic_string();
  }
  file.lines = split_lines(content);
  for (auto& l : file.lines) {
    if (!l.empty() && l.back() == '\r') l.pop_back();
  }
  outcome.references = scan_file(file);
  return outcome;
}

}  // namespace

ScanResult scan_directory(const std::string& root, unsigned parallelism) {
  const fs::path base = fs::path(root).lexically_normal();
  if (!fs::is_directory(base)) throw std::runtime_error("not a directory: " + root);

  std::vector<fs::path> files;
  std::vector<std::string> walk_warnings;
  std::error_code ec;
  auto it = fs::recursive_directory_iterator(base, fs::directory_options::skip_permission_denied, ec);
  if (ec) throw std::runtime_error("cannot open " + root + ": " + ec.message());
  for (; it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) {
      walk_warnings.push_back("cannot traverse: " + ec.message());
      break;
    }
    if (it->is_regular_file(ec)) files.push_back(it->path());
  }
  std::sort(files.begin(), files.end());

  std::vector<FileOutcome> outcomes(files.size());
  parallel_for(files.size(), parallelism, [&](std::size_t i) { outcomes[i] = scan_path(base, files[i]); });

  ScanResult result;
  result.warnings = std::move(walk_warnings);
  for (auto& o : outcomes) {
    if (o.warning) result.warnings.push_back(std::move(*o.warning));
    for (auto& r : o.references) result.references.push_back(std::move(r));
  }
  return result;
}

std::string write_reference_table(const std::vector<PostReferenceGH>& refs) {
  std::string out = "repoName\tbranchFilepath\tlineNumber\trawUrl\tsharingLink\tpostId\tpostKind\n";
  for (const auto& r : refs) {
    out += escape_field(r.repo_name) + '\t' + escape_field(r.branch_filepath) + '\t' + std::to_string(r.line_number) +
           '\t' + escape_field(r.raw_url) + '\t' + r.sharing_link + '\t' + std::to_string(r.post_id) + '\t' +
           std::string(to_string(r.kind)) + '\n';
  }
  return out;
}

std::vector<PostReferenceGH> read_reference_table(const std::string& text) {
  std::vector<PostReferenceGH> out;
  const auto lines = split_lines(text);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = split_tabs(lines[i]);
    if (f.size() != 7) throw std::runtime_error("reference table row " + std::to_string(i + 1) + ": expected 7 fields");
    const auto line_no = parse_int(f[2]);
    const auto id = parse_int(f[5]);
    if (!line_no || !id || (f[6] != "question" && f[6] != "answer")) {
      throw std::runtime_error("reference table row " + std::to_string(i + 1) + ": malformed field");
    }
    out.push_back({unescape_field(f[0]), unescape_field(f[1]), static_cast<int>(*line_no), unescape_field(f[3]),
                   std::string(f[4]), *id, f[6] == "question" ? PostKind::Question : PostKind::Answer});
  }
  return out;
}

}  // namespace posthist
