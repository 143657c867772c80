#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace posthist::metrics {

enum class Family { Edit, Set, Profile, Fingerprint, Equal };
enum class Unit { Character, Token, NGram, Shingle };
enum class EditKind { Levenshtein, DamerauLevenshtein, OptimalAlignment, LongestCommonSubsequence };
enum class Coefficient { Jaccard, Dice, Overlap, LongestCommonSubsequence, OptimalAlignment };
enum class Weighting { Bool, TermFrequency, NormalizedTermFrequency };
enum class Distance { Cosine, Manhattan };
enum class NormalizationKind { Edit, NGram, Shingle };

std::string_view to_string(Family f);
std::string_view to_string(Unit u);

struct MetricDescriptor {
  std::string name;
  Family family = Family::Equal;
  Unit unit = Unit::Character;
  std::optional<int> n;
  std::optional<EditKind> edit_kind;
  std::optional<Coefficient> coefficient;
  std::optional<Weighting> weighting;
  std::optional<Distance> distance;
  bool normalized = false;
  bool padded = false;
  // Smallest input (characters, or tokens for shingles) the metric accepts
  // before normalization can shrink it further.
  int min_input_length = 1;

  // Which normalization the normalized variant applies.
  NormalizationKind normalization() const;
  bool operator==(const MetricDescriptor&) const = default;
};

// Canonical camelCase name derived from the descriptor fields.
std::string descriptor_name(const MetricDescriptor& d);

// A similarity in [0, 1], or nullopt when an input is too short for the
// metric (the matcher then falls back to a backup metric).
using Score = std::optional<double>;

// Reserved code point used for n-gram padding. It lies outside the Unicode
// range, so it never occurs in decoded text.
inline constexpr char32_t kPadChar = 0x110000;
// Joins tokens inside a shingle key.
inline constexpr char32_t kShingleJoin = 0x110001;

std::u32string normalize(std::u32string_view s, NormalizationKind kind);
std::string normalize(std::string_view s, NormalizationKind kind);

// Maximal runs of non-whitespace.
std::vector<std::u32string> tokenize(std::u32string_view s);

// Character n-grams in order; nullopt when unpadded and |s| < n. The padded
// form adds n-1 copies of kPadChar on both ends.
std::optional<std::vector<std::u32string>> ngrams(std::u32string_view s, int n, bool padded);

// Token n-shingles in order; nullopt when fewer than n tokens.
std::optional<std::vector<std::vector<std::u32string>>> shingles(const std::vector<std::u32string>& tokens,
                                                                 int n);

Score edit_similarity(std::u32string_view a, std::u32string_view b, EditKind kind);
Score set_similarity(std::u32string_view a, std::u32string_view b, Unit unit, std::optional<int> n,
                     Coefficient coefficient, bool padded = false);
Score profile_similarity(std::u32string_view a, std::u32string_view b, Unit unit, std::optional<int> n,
                         Weighting weighting, Distance distance);

struct Fingerprint {
  std::uint64_t hash = 0;
  std::size_t position = 0;
  bool operator==(const Fingerprint&) const = default;
};

// Rolling polynomial hash of every n-gram (base 1000003, modulus 2^61-1).
std::vector<std::uint64_t> ngram_hashes(std::u32string_view s, int n);
// Winnowing with window size n: the rightmost minimum hash of each window,
// recorded once per distinct position. nullopt when |s| < n.
std::optional<std::vector<Fingerprint>> winnow(std::u32string_view s, int n);
Score winnowing_similarity(std::u32string_view a, std::u32string_view b, int n, Coefficient comparison);

// BM15 term weight for raw frequency f with k = 1.5.
double bm15_weight(double f);

// Scores already-decoded strings; applies normalization when the descriptor
// asks for it. Works for any descriptor, including non-catalog siblings.
Score score_decoded(const MetricDescriptor& d, std::u32string_view a, std::u32string_view b);
Score score(const MetricDescriptor& d, std::string_view a, std::string_view b);

class UnknownMetric : public std::invalid_argument {
 public:
  explicit UnknownMetric(const std::string& name) : std::invalid_argument("unknown metric: " + name) {}
};

// The 134 evaluated metrics in a fixed order.
const std::vector<MetricDescriptor>& catalog();
std::vector<MetricDescriptor> enumerate();
const MetricDescriptor& resolve(std::string_view name);

class Metric {
 public:
  explicit Metric(const MetricDescriptor& d) : descriptor_(&d) {}
  const MetricDescriptor& descriptor() const { return *descriptor_; }
  Score operator()(std::string_view a, std::string_view b) const { return score(*descriptor_, a, b); }

 private:
  const MetricDescriptor* descriptor_;
};

inline Metric resolve_metric(std::string_view name) { return Metric(resolve(name)); }

}  // namespace posthist::metrics
