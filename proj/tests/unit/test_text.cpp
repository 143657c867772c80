#include <gtest/gtest.h>

#include <random>

#include "posthist/text.hpp"
#include "temp_dir.hpp"

using namespace posthist;
namespace pt = posthist::testing;

TEST(Utf8, DecodeEncodeRoundTrip) {
  const std::string s = "a\xC3\xA9\xE2\x82\xAC\xF0\x9F\x98\x80z";  // a é € 😀 z
  const auto d = utf8_decode(s);
  ASSERT_EQ(d.size(), 5u);
  EXPECT_EQ(d[1], 0xE9u);
  EXPECT_EQ(d[2], 0x20ACu);
  EXPECT_EQ(d[3], 0x1F600u);
  EXPECT_EQ(utf8_encode(d), s);
  EXPECT_EQ(utf8_length(s), 5u);
}

TEST(Utf8, InvalidBytesBecomeReplacementCharacter) {
  const auto d = utf8_decode("a\xFF" "b");
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d[1], 0xFFFDu);
}

TEST(Escape, RoundTripsControlCharacters) {
  const std::string raw = "tab\there\nnew\\line\rend";
  const auto esc = escape_field(raw);
  EXPECT_EQ(esc.find('\t'), std::string::npos);
  EXPECT_EQ(esc.find('\n'), std::string::npos);
  EXPECT_EQ(unescape_field(esc), raw);
}

TEST(Escape, RandomStringsRoundTrip) {
  std::mt19937 rng(7);
  const std::string alphabet = "ab\\\t\n\r x";
  for (int i = 0; i < 500; ++i) {
    std::string s;
    const int len = std::uniform_int_distribution<int>(0, 20)(rng);
    for (int k = 0; k < len; ++k) s.push_back(alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)]);
    EXPECT_EQ(unescape_field(escape_field(s)), s);
  }
}

TEST(Lines, SplitJoinRoundTrip) {
  EXPECT_TRUE(split_lines("").empty());
  EXPECT_EQ(split_lines("a\nb"), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(split_lines("a\n"), (std::vector<std::string>{"a", ""}));
  for (const std::string s : {"", "a", "a\n", "\n", "a\n\nb", "x\ny\n"}) EXPECT_EQ(join_lines(split_lines(s)), s);
}

TEST(Lines, SplitTabsKeepsEmptyFields) {
  const auto f = split_tabs("a\t\tb\t");
  ASSERT_EQ(f.size(), 4u);
  EXPECT_EQ(f[1], "");
  EXPECT_EQ(f[3], "");
}

TEST(Time, ParsesAndFormatsIso8601) {
  const auto t = parse_iso8601("2017-03-04T05:06:07.250");
  EXPECT_EQ(format_iso8601(t), "2017-03-04T05:06:07.250Z");
  EXPECT_EQ(format_iso8601(parse_iso8601("2017-03-04 05:06:07")), "2017-03-04T05:06:07Z");
  EXPECT_EQ(parse_iso8601("2017-03-04T07:06:07+02:00"), parse_iso8601("2017-03-04T05:06:07Z"));
  EXPECT_EQ(parse_iso8601("2017-03-04"), parse_iso8601("2017-03-04T00:00:00"));
  EXPECT_THROW(parse_iso8601("2017-13-04T00:00:00"), TimeFormatError);
  EXPECT_THROW(parse_iso8601("yesterday"), TimeFormatError);
}

TEST(Numbers, ParseInt) {
  EXPECT_EQ(parse_int("42"), 42);
  EXPECT_EQ(parse_int("-7"), -7);
  EXPECT_FALSE(parse_int(""));
  EXPECT_FALSE(parse_int("4x"));
  EXPECT_FALSE(parse_int("99999999999999999999999"));
}

TEST(Numbers, FormatDoubleIsFixed) {
  EXPECT_EQ(format_double(0.5, 3), "0.500");
  EXPECT_EQ(format_double(1.0 / 3.0, 4), "0.3333");
}

TEST(Files, AtomicWriteReplacesContent) {
  pt::TempDir dir;
  const auto path = dir.file("out.txt");
  write_file_atomic(path, "first");
  write_file_atomic(path, "second");
  EXPECT_EQ(read_file(path), "second");
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir.path())) ++entries;
  EXPECT_EQ(entries, 1u);
  EXPECT_THROW(read_file(dir.file("missing")), std::runtime_error);
}

TEST(Strings, TrimAndLower) {
  EXPECT_EQ(trim("  a b \t"), "a b");
  EXPECT_EQ(to_lower_ascii("AbC"), "abc");
}
