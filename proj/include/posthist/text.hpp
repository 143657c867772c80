#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace posthist {

using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

// Decodes UTF-8 into Unicode scalar values. Invalid sequences become U+FFFD.
std::u32string utf8_decode(std::string_view s);
std::string utf8_encode(std::u32string_view s);
void utf8_append(std::string& out, char32_t cp);

// Number of scalar values in s (counts lead bytes).
std::size_t utf8_length(std::string_view s);

bool is_space(char32_t c);

// Tab-separated table escaping: backslash, tab, newline and carriage return.
std::string escape_field(std::string_view s);
std::string unescape_field(std::string_view s);

// Splits on '\t' without unescaping.
std::vector<std::string_view> split_tabs(std::string_view line);

// Splits on '\n'. The empty string yields no lines; a trailing '\n' yields a
// trailing empty line so that join_lines(split_lines(s)) == s.
std::vector<std::string> split_lines(std::string_view s);
std::string join_lines(const std::vector<std::string>& lines);

std::string_view trim(std::string_view s);
std::string to_lower_ascii(std::string_view s);

class TimeFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Accepts "YYYY-MM-DD[T ]HH:MM:SS[.fff][Z|+HH:MM|-HH:MM]" and "YYYY-MM-DD".
Timestamp parse_iso8601(std::string_view s);
// Emits "YYYY-MM-DDTHH:MM:SS[.fff]Z"; the fraction only when nonzero.
std::string format_iso8601(Timestamp t);

std::optional<std::int64_t> parse_int(std::string_view s);
std::string format_double(double v, int precision = 6);

// Writes content to a sibling temporary file and renames it over path.
void write_file_atomic(const std::string& path, std::string_view content);
std::string read_file(const std::string& path);

}  // namespace posthist
