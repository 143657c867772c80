#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "metric_reference.hpp"
#include "oracles.hpp"
#include "posthist/metrics.hpp"
#include "posthist/text.hpp"

using namespace posthist;
using namespace posthist::metrics;
namespace pt = posthist::testing;

namespace {

double value(std::string_view name, std::string_view a, std::string_view b) {
  const auto s = resolve_metric(name)(a, b);
  EXPECT_TRUE(s.has_value()) << name;
  return s.value_or(-1);
}

std::u32string u32(std::string_view s) { return utf8_decode(s); }

// Code-like and prose-like random strings with repeated tokens.
std::string random_string(std::mt19937& rng) {
  static const std::vector<std::string> pieces = {"a", "b", "foo", "Bar", "x", "(", ")", "{", "}", ";", " ", "  ",
                                                  "\t", "\n", "int", "=", "1", "_y", "é", "ab"};
  std::string s;
  const int len = std::uniform_int_distribution<int>(0, 14)(rng);
  for (int i = 0; i < len; ++i) s += pieces[std::uniform_int_distribution<std::size_t>(0, pieces.size() - 1)(rng)];
  return s;
}

}  // namespace

TEST(Normalize, SpecExamples) {
  EXPECT_EQ(normalize(std::string("A  B\tC"), NormalizationKind::Edit), "a b c");
  EXPECT_EQ(normalize(std::string("f(x){ y; }"), NormalizationKind::NGram), "f(x)y");
  EXPECT_EQ(normalize(std::string(""), NormalizationKind::Edit), "");
  EXPECT_EQ(normalize(std::string("Foo.bar( x_1 )"), NormalizationKind::Shingle), "foobar x_1 ");
}

TEST(Normalize, AgreesWithOracle) {
  std::mt19937 rng(3);
  for (int i = 0; i < 2000; ++i) {
    const auto s = u32(random_string(rng));
    EXPECT_EQ(normalize(s, NormalizationKind::Edit), pt::oracle::normalize(s, pt::oracle::Norm::Edit));
    EXPECT_EQ(normalize(s, NormalizationKind::NGram), pt::oracle::normalize(s, pt::oracle::Norm::NGram));
    EXPECT_EQ(normalize(s, NormalizationKind::Shingle), pt::oracle::normalize(s, pt::oracle::Norm::Shingle));
  }
}

TEST(Tokenize, SpecExamples) {
  EXPECT_EQ(tokenize(U"a b  c"), (std::vector<std::u32string>{U"a", U"b", U"c"}));
  EXPECT_TRUE(tokenize(U"").empty());
  EXPECT_EQ(tokenize(U" x "), (std::vector<std::u32string>{U"x"}));
}

TEST(NGrams, SpecExamples) {
  EXPECT_EQ(*ngrams(U"abcd", 2, false), (std::vector<std::u32string>{U"ab", U"bc", U"cd"}));
  EXPECT_FALSE(ngrams(U"ab", 3, false));
  const std::u32string pad(1, kPadChar);
  EXPECT_EQ(*ngrams(U"ab", 2, true), (std::vector<std::u32string>{pad + U"a", U"ab", U"b" + pad}));
}

TEST(Shingles, SpecExamples) {
  using Tokens = std::vector<std::u32string>;
  EXPECT_EQ(*shingles({U"a", U"b", U"c"}, 2), (std::vector<Tokens>{{U"a", U"b"}, {U"b", U"c"}}));
  EXPECT_FALSE(shingles({U"a"}, 2));
  EXPECT_EQ(shingles({U"a", U"a", U"a"}, 2)->size(), 2u);
}

TEST(EditSimilarity, SpecExamples) {
  EXPECT_NEAR(*edit_similarity(U"kitten", U"sitting", EditKind::Levenshtein), 4.0 / 7.0, 1e-12);
  for (auto k : {EditKind::Levenshtein, EditKind::DamerauLevenshtein, EditKind::OptimalAlignment,
                 EditKind::LongestCommonSubsequence}) {
    EXPECT_EQ(*edit_similarity(U"abc", U"abc", k), 1.0);
    EXPECT_FALSE(edit_similarity(U"", U"", k));
    EXPECT_EQ(*edit_similarity(U"", U"ab", k), 0.0);
  }
  EXPECT_EQ(*edit_similarity(U"abc", U"xyz", EditKind::Levenshtein), 0.0);
}

TEST(EditSimilarity, TranspositionVariantsDiffer) {
  // "ca" -> "abc": OSA cannot edit a transposed pair again, DL can.
  EXPECT_NEAR(*edit_similarity(U"ca", U"abc", EditKind::OptimalAlignment), 0.0, 1e-12);
  EXPECT_NEAR(*edit_similarity(U"ca", U"abc", EditKind::DamerauLevenshtein), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(*edit_similarity(U"ab", U"ba", EditKind::Levenshtein), 0.0, 1e-12);
  EXPECT_NEAR(*edit_similarity(U"ab", U"ba", EditKind::OptimalAlignment), 0.5, 1e-12);
}

// Exhaustive over {a,b,c} up to length 5 against breadth-first search over
// edit sequences; the length-8 sweep lives in the acceptance binary.
TEST(EditSimilarity, MatchesShortestEditSequences) {
  const pt::oracle::StringUniverse universe(U"abc", 5);
  const auto lev = universe.shortest_paths(pt::oracle::StringUniverse::Moves::Levenshtein);
  const auto dl = universe.shortest_paths(pt::oracle::StringUniverse::Moves::Damerau);
  const auto indel = universe.shortest_paths(pt::oracle::StringUniverse::Moves::Indel);
  const auto osa = universe.restricted_edit_table();
  const std::size_t n = universe.size();
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = universe.at(i);
    for (std::size_t j = 0; j < n; ++j) {
      const auto& b = universe.at(j);
      const double longest = static_cast<double>(std::max(a.size(), b.size()));
      if (longest == 0) continue;
      auto check = [&](EditKind k, double expected) {
        if (std::abs(*edit_similarity(a, b, k) - expected) > 1e-12) ++mismatches;
      };
      check(EditKind::Levenshtein, (longest - lev(i, j)) / longest);
      check(EditKind::DamerauLevenshtein, (longest - dl(i, j)) / longest);
      check(EditKind::OptimalAlignment, (longest - osa[i * n + j]) / longest);
      check(EditKind::LongestCommonSubsequence,
            (static_cast<double>(a.size() + b.size()) - indel(i, j)) / 2.0 / longest);
    }
  }
  EXPECT_EQ(mismatches, 0u);
}

TEST(EditSimilarity, ReferenceRecurrencesAgreeWithSearch) {
  const pt::oracle::StringUniverse universe(U"abc", 4);
  const auto dl = universe.shortest_paths(pt::oracle::StringUniverse::Moves::Damerau);
  for (std::size_t i = 0; i < universe.size(); ++i) {
    for (std::size_t j = 0; j < universe.size(); ++j) {
      ASSERT_EQ(pt::reference_damerau(universe.at(i), universe.at(j)), dl(i, j));
    }
  }
}

TEST(SetSimilarity, SpecExamples) {
  EXPECT_NEAR(value("tokenJaccard", "a b c", "a b d"), 0.5, 1e-12);
  EXPECT_NEAR(value("tokenOverlap", "a b", "a b c d"), 1.0, 1e-12);
  EXPECT_NEAR(value("tokenDice", "q r", "q r"), 1.0, 1e-12);
  EXPECT_FALSE(resolve_metric("tokenJaccard")("", "a"));
  EXPECT_FALSE(resolve_metric("threeGramJaccard")("ab", "abc"));
}

TEST(ProfileSimilarity, SpecExamples) {
  MetricDescriptor cosine_bool;
  cosine_bool.family = Family::Profile;
  cosine_bool.unit = Unit::Token;
  cosine_bool.weighting = Weighting::Bool;
  cosine_bool.distance = Distance::Cosine;
  EXPECT_NEAR(*score(cosine_bool, "a b", "a c"), 0.5, 1e-12);
  MetricDescriptor manhattan_tf = cosine_bool;
  manhattan_tf.weighting = Weighting::TermFrequency;
  manhattan_tf.distance = Distance::Manhattan;
  EXPECT_NEAR(*score(manhattan_tf, "a a", "b b"), 0.0, 1e-12);
  EXPECT_NEAR(bm15_weight(1), 1.0, 1e-12);
  EXPECT_NEAR(bm15_weight(3), 3 * 2.5 / 4.5, 1e-12);
}

TEST(Winnowing, SpecExamples) {
  for (auto c : {Coefficient::Jaccard, Coefficient::Dice, Coefficient::Overlap, Coefficient::LongestCommonSubsequence,
                 Coefficient::OptimalAlignment}) {
    EXPECT_EQ(*winnowing_similarity(U"abcdefgh", U"abcdefgh", 4, c), 1.0);
  }
  EXPECT_EQ(*winnowing_similarity(U"abcdefgh", U"ijklmnop", 4, Coefficient::Jaccard), 0.0);
  EXPECT_NEAR(*winnowing_similarity(U"abcdefgh", U"abcdxfgh", 4, Coefficient::Jaccard),
              *pt::oracle::winnowing(U"abcdefgh", U"abcdxfgh", 4, pt::oracle::FingerprintComparison::Jaccard), 1e-12);
  EXPECT_FALSE(winnowing_similarity(U"abc", U"abcdef", 4, Coefficient::Jaccard));
}

TEST(Winnowing, HashesMatchDirectPolynomial) {
  std::mt19937 rng(17);
  for (int i = 0; i < 300; ++i) {
    const auto s = u32(random_string(rng));
    for (int n = 2; n <= 5; ++n) {
      const auto fp = winnow(s, n);
      const auto expected = pt::oracle::fingerprints(s, n);
      if (!fp) {
        EXPECT_TRUE(expected.empty());
        continue;
      }
      std::vector<std::uint64_t> hashes;
      for (const auto& f : *fp) hashes.push_back(f.hash);
      EXPECT_EQ(hashes, expected);
    }
  }
}

TEST(Catalog, Has134UniqueDerivedNames) {
  const auto& all = catalog();
  ASSERT_EQ(all.size(), 134u);
  std::set<std::string> names;
  for (const auto& d : all) {
    EXPECT_EQ(d.name, descriptor_name(d));
    EXPECT_TRUE(names.insert(d.name).second) << d.name;
    EXPECT_EQ(resolve(d.name), d);
  }
  EXPECT_EQ(enumerate(), all);
  EXPECT_EQ(resolve("equal").family, Family::Equal);
  EXPECT_EQ(resolve("tokenEqual").unit, Unit::Token);
  EXPECT_THROW(resolve("noSuchMetric"), UnknownMetric);
}

TEST(Catalog, FamilyCounts) {
  std::map<Family, int> counts;
  for (const auto& d : catalog()) ++counts[d.family];
  EXPECT_EQ(counts[Family::Edit], 8);
  EXPECT_EQ(counts[Family::Equal], 4);
  EXPECT_EQ(counts[Family::Set], 6 + 36 + 12);
  EXPECT_EQ(counts[Family::Profile], 21 + 7);
  EXPECT_EQ(counts[Family::Fingerprint], 40);
}

TEST(Catalog, MinInputLength) {
  for (const auto& d : catalog()) {
    int expected = 1;
    if ((d.unit == Unit::NGram && !d.padded) || d.unit == Unit::Shingle) expected = *d.n;
    EXPECT_EQ(d.min_input_length, expected) << d.name;
  }
  EXPECT_EQ(resolve("manhattanFourGramNormalized").min_input_length, 4);
  EXPECT_EQ(resolve("twoGramDiceNormalizedPadding").min_input_length, 1);
}

TEST(Catalog, FinalConfigurationMetricIsReflexive) {
  EXPECT_EQ(value("manhattanFourGramNormalized", "int x = 1;", "int x = 1;"), 1.0);
}

class CatalogProperties : public ::testing::TestWithParam<std::size_t> {};

TEST_P(CatalogProperties, RangeReflexivitySymmetryAndOracle) {
  const auto& d = catalog()[GetParam()];
  std::mt19937 rng(100 + static_cast<unsigned>(GetParam()));
  for (int i = 0; i < 200; ++i) {
    const auto a = random_string(rng);
    const auto b = random_string(rng);
    const auto ab = score(d, a, b);
    const auto ba = score(d, b, a);
    ASSERT_EQ(ab.has_value(), ba.has_value()) << d.name;
    if (ab) {
      EXPECT_GE(*ab, 0.0) << d.name;
      EXPECT_LE(*ab, 1.0) << d.name;
      EXPECT_NEAR(*ab, *ba, 1e-12) << d.name << " '" << a << "' '" << b << "'";
    }
    const auto ref = pt::reference_score(d, u32(a), u32(b));
    ASSERT_EQ(ab.has_value(), ref.has_value()) << d.name << " '" << a << "' '" << b << "'";
    if (ab) EXPECT_NEAR(*ab, *ref, 1e-12) << d.name << " '" << a << "' '" << b << "'";
    const auto aa = score(d, a, a);
    if (aa) EXPECT_EQ(*aa, 1.0) << d.name << " '" << a << "'";
  }
}

class NormalizedVariants : public ::testing::TestWithParam<std::size_t> {};

TEST_P(NormalizedVariants, ScoreNormalizedInputs) {
  const auto& d = catalog()[GetParam()];
  MetricDescriptor sibling = d;
  sibling.normalized = false;
  std::mt19937 rng(500 + static_cast<unsigned>(GetParam()));
  for (int i = 0; i < 200; ++i) {
    const auto a = random_string(rng);
    const auto b = random_string(rng);
    const auto direct = score(d, a, b);
    const auto via = score(sibling, normalize(a, d.normalization()), normalize(b, d.normalization()));
    ASSERT_EQ(direct.has_value(), via.has_value());
    if (direct) EXPECT_EQ(*direct, *via) << d.name;
  }
}

INSTANTIATE_TEST_SUITE_P(All, CatalogProperties, ::testing::Range<std::size_t>(0, 134),
                         [](const auto& info) { return catalog()[info.param].name; });

std::vector<std::size_t> normalized_indices() {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < catalog().size(); ++i) {
    if (catalog()[i].normalized) out.push_back(i);
  }
  return out;
}

INSTANTIATE_TEST_SUITE_P(All, NormalizedVariants, ::testing::ValuesIn(normalized_indices()),
                         [](const auto& info) { return catalog()[info.param].name; });

TEST(Score, EqualBaselines) {
  EXPECT_EQ(value("equal", "", ""), 1.0);
  EXPECT_EQ(value("equal", "a", "A"), 0.0);
  EXPECT_EQ(value("equalNormalized", "A  b", "a b"), 1.0);
  EXPECT_EQ(value("tokenEqual", "a  b", " a b"), 1.0);
}

TEST(Score, CountsScalarValuesNotBytes) {
  // One substitution among two characters, even though é is two bytes.
  EXPECT_NEAR(value("levenshtein", "\xC3\xA9x", "ex"), 0.5, 1e-12);
}
