#include <algorithm>
#include <cmath>
#include <span>

#include "posthist/edit_distance.hpp"
#include "posthist/metrics.hpp"
#include "posthist/text.hpp"

namespace posthist::metrics {

namespace {

char32_t to_lower(char32_t c) {
  if (c >= U'A' && c <= U'Z') return c + 32;
  if ((c >= 0xC0 && c <= 0xDE && c != 0xD7)) return c + 32;          // Latin-1
  if (c >= 0x391 && c <= 0x3A9 && c != 0x3A2) return c + 32;          // Greek
  if (c >= 0x410 && c <= 0x42F) return c + 32;                        // Cyrillic
  return c;
}

bool is_word_char(char32_t c) {
  return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z') || (c >= U'0' && c <= U'9') || c == U'_';
}

std::u32string collapse_whitespace(std::u32string_view s) {
  std::u32string out;
  out.reserve(s.size());
  bool in_space = false;
  for (char32_t c : s) {
    if (is_space(c)) {
      if (!in_space) out.push_back(U' ');
      in_space = true;
    } else {
      out.push_back(c);
      in_space = false;
    }
  }
  return out;
}

using Element = std::u32string;
// Sorted (element, count) pairs; sorting makes every reduction below
// independent of argument order, so scores are exactly symmetric.
using Profile = std::vector<std::pair<Element, int>>;

Profile make_profile(std::vector<Element> elements) {
  std::sort(elements.begin(), elements.end());
  Profile p;
  for (auto& e : elements) {
    if (!p.empty() && p.back().first == e) {
      ++p.back().second;
    } else {
      p.emplace_back(std::move(e), 1);
    }
  }
  return p;
}

std::optional<std::vector<Element>> elements_of(std::u32string_view s, Unit unit, std::optional<int> n,
                                                bool padded) {
  switch (unit) {
    case Unit::Token: {
      auto t = tokenize(s);
      if (t.empty()) return std::nullopt;
      return t;
    }
    case Unit::NGram:
      return ngrams(s, n.value_or(2), padded);
    case Unit::Shingle: {
      auto sh = shingles(tokenize(s), n.value_or(2));
      if (!sh) return std::nullopt;
      std::vector<Element> keys;
      keys.reserve(sh->size());
      for (const auto& parts : *sh) {
        Element key;
        for (std::size_t i = 0; i < parts.size(); ++i) {
          if (i > 0) key.push_back(kShingleJoin);
          key += parts[i];
        }
        keys.push_back(std::move(key));
      }
      return keys;
    }
    case Unit::Character:
      break;
  }
  std::vector<Element> chars;
  for (char32_t c : s) chars.emplace_back(1, c);
  if (chars.empty()) return std::nullopt;
  return chars;
}

double coefficient_of(std::size_t inter, std::size_t size_a, std::size_t size_b, Coefficient c) {
  switch (c) {
    case Coefficient::Jaccard:
      return static_cast<double>(inter) / static_cast<double>(size_a + size_b - inter);
    case Coefficient::Dice:
      return 2.0 * static_cast<double>(inter) / static_cast<double>(size_a + size_b);
    case Coefficient::Overlap:
      return static_cast<double>(inter) / static_cast<double>(std::min(size_a, size_b));
    default:
      throw std::invalid_argument("coefficient not applicable to sets");
  }
}

double weight(int count, Weighting w) {
  switch (w) {
    case Weighting::Bool: return 1.0;
    case Weighting::TermFrequency: return count;
    case Weighting::NormalizedTermFrequency: return bm15_weight(count);
  }
  return count;
}

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::Edit: return "edit";
    case Family::Set: return "set";
    case Family::Profile: return "profile";
    case Family::Fingerprint: return "fingerprint";
    case Family::Equal: return "equal";
  }
  return "";
}

std::string_view to_string(Unit u) {
  switch (u) {
    case Unit::Character: return "character";
    case Unit::Token: return "token";
    case Unit::NGram: return "ngram";
    case Unit::Shingle: return "shingle";
  }
  return "";
}

std::u32string normalize(std::u32string_view s, NormalizationKind kind) {
  std::u32string out;
  out.reserve(s.size());
  switch (kind) {
    case NormalizationKind::Edit:
      for (char32_t c : collapse_whitespace(s)) out.push_back(to_lower(c));
      return out;
    case NormalizationKind::NGram:
      for (char32_t c : s) {
        if (is_space(c) || c == U'{' || c == U'}' || c == U';') continue;
        out.push_back(to_lower(c));
      }
      return out;
    case NormalizationKind::Shingle: {
      std::u32string kept;
      kept.reserve(s.size());
      for (char32_t c : s) {
        if (is_space(c) || is_word_char(c)) kept.push_back(to_lower(c));
      }
      return collapse_whitespace(kept);
    }
  }
  return out;
}

std::string normalize(std::string_view s, NormalizationKind kind) {
  return utf8_encode(normalize(utf8_decode(s), kind));
}

std::vector<std::u32string> tokenize(std::u32string_view s) {
  std::vector<std::u32string> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    const std::size_t start = i;
    while (i < s.size() && !is_space(s[i])) ++i;
    if (i > start) tokens.emplace_back(s.substr(start, i - start));
  }
  return tokens;
}

std::optional<std::vector<std::u32string>> ngrams(std::u32string_view s, int n, bool padded) {
  if (n < 1) throw std::invalid_argument("n-gram size must be positive");
  std::u32string buf;
  std::u32string_view src = s;
  if (padded) {
    if (s.empty()) return std::nullopt;
    buf.assign(static_cast<std::size_t>(n - 1), kPadChar);
    buf += s;
    buf.append(static_cast<std::size_t>(n - 1), kPadChar);
    src = buf;
  }
  const auto size = static_cast<std::size_t>(n);
  if (src.size() < size) return std::nullopt;
  std::vector<std::u32string> grams;
  grams.reserve(src.size() - size + 1);
  for (std::size_t i = 0; i + size <= src.size(); ++i) grams.emplace_back(src.substr(i, size));
  return grams;
}

std::optional<std::vector<std::vector<std::u32string>>> shingles(const std::vector<std::u32string>& tokens,
                                                                 int n) {
  if (n < 1) throw std::invalid_argument("shingle size must be positive");
  const auto size = static_cast<std::size_t>(n);
  if (tokens.size() < size) return std::nullopt;
  std::vector<std::vector<std::u32string>> out;
  out.reserve(tokens.size() - size + 1);
  for (std::size_t i = 0; i + size <= tokens.size(); ++i) {
    out.emplace_back(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                     tokens.begin() + static_cast<std::ptrdiff_t>(i + size));
  }
  return out;
}

Score edit_similarity(std::u32string_view a, std::u32string_view b, EditKind kind) {
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return std::nullopt;
  const std::span<const char32_t> sa(a.data(), a.size());
  const std::span<const char32_t> sb(b.data(), b.size());
  double value = 0.0;
  switch (kind) {
    case EditKind::Levenshtein:
      value = static_cast<double>(longest - levenshtein_distance(sa, sb));
      break;
    case EditKind::DamerauLevenshtein:
      value = static_cast<double>(longest - damerau_levenshtein_distance(sa, sb));
      break;
    case EditKind::OptimalAlignment:
      value = static_cast<double>(longest - optimal_alignment_distance(sa, sb));
      break;
    case EditKind::LongestCommonSubsequence:
      value = static_cast<double>(lcs_length(sa, sb));
      break;
  }
  return value / static_cast<double>(longest);
}

Score set_similarity(std::u32string_view a, std::u32string_view b, Unit unit, std::optional<int> n,
                     Coefficient coefficient, bool padded) {
  auto ea = elements_of(a, unit, n, padded);
  auto eb = elements_of(b, unit, n, padded);
  if (!ea || !eb) return std::nullopt;
  const Profile pa = make_profile(std::move(*ea));
  const Profile pb = make_profile(std::move(*eb));
  std::size_t inter = 0;
  auto ia = pa.begin();
  auto ib = pb.begin();
  while (ia != pa.end() && ib != pb.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      ++inter;
      ++ia;
      ++ib;
    }
  }
  return coefficient_of(inter, pa.size(), pb.size(), coefficient);
}

double bm15_weight(double f) {
  constexpr double k = 1.5;
  return f * (k + 1.0) / (f + k);
}

Score profile_similarity(std::u32string_view a, std::u32string_view b, Unit unit, std::optional<int> n,
                         Weighting weighting, Distance distance) {
  auto ea = elements_of(a, unit, n, false);
  auto eb = elements_of(b, unit, n, false);
  if (!ea || !eb) return std::nullopt;
  const Profile pa = make_profile(std::move(*ea));
  const Profile pb = make_profile(std::move(*eb));

  double dot = 0.0, norm_a = 0.0, norm_b = 0.0, l1_diff = 0.0, l1_sum = 0.0;
  auto ia = pa.begin();
  auto ib = pb.begin();
  while (ia != pa.end() || ib != pb.end()) {
    double wa = 0.0, wb = 0.0;
    if (ib == pb.end() || (ia != pa.end() && ia->first < ib->first)) {
      wa = weight(ia->second, weighting);
      ++ia;
    } else if (ia == pa.end() || ib->first < ia->first) {
      wb = weight(ib->second, weighting);
      ++ib;
    } else {
      wa = weight(ia->second, weighting);
      wb = weight(ib->second, weighting);
      ++ia;
      ++ib;
    }
    dot += wa * wb;
    norm_a += wa * wa;
    norm_b += wb * wb;
    l1_diff += std::abs(wa - wb);
    l1_sum += std::abs(wa) + std::abs(wb);
  }
  double value = 0.0;
  if (distance == Distance::Cosine) {
    value = dot / std::sqrt(norm_a * norm_b);
  } else {
    value = 1.0 - l1_diff / l1_sum;
  }
  return std::clamp(value, 0.0, 1.0);
}

}  // namespace posthist::metrics
