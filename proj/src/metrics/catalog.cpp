#include <algorithm>
#include <array>
#include <unordered_map>

#include "posthist/metrics.hpp"
#include "posthist/text.hpp"

namespace posthist::metrics {

namespace {

constexpr std::array<std::string_view, 6> kNumberWords = {"", "One", "Two", "Three", "Four", "Five"};

std::string lower_first(std::string s) {
  if (!s.empty() && s[0] >= 'A' && s[0] <= 'Z') s[0] = static_cast<char>(s[0] - 'A' + 'a');
  return s;
}

std::string unit_word(const MetricDescriptor& d) {
  switch (d.unit) {
    case Unit::Token: return "Token";
    case Unit::NGram: return std::string(kNumberWords.at(static_cast<std::size_t>(*d.n))) + "Gram";
    case Unit::Shingle: return std::string(kNumberWords.at(static_cast<std::size_t>(*d.n))) + "Shingle";
    case Unit::Character: return "";
  }
  return "";
}

std::string_view coefficient_word(Coefficient c) {
  switch (c) {
    case Coefficient::Jaccard: return "Jaccard";
    case Coefficient::Dice: return "Dice";
    case Coefficient::Overlap: return "Overlap";
    case Coefficient::LongestCommonSubsequence: return "LongestCommonSubsequence";
    case Coefficient::OptimalAlignment: return "OptimalAlignment";
  }
  return "";
}

std::string_view weighting_word(Weighting w) {
  switch (w) {
    case Weighting::Bool: return "Bool";
    case Weighting::TermFrequency: return "TermFrequency";
    case Weighting::NormalizedTermFrequency: return "NormalizedTermFrequency";
  }
  return "";
}

std::string_view edit_word(EditKind k) {
  switch (k) {
    case EditKind::Levenshtein: return "levenshtein";
    case EditKind::DamerauLevenshtein: return "damerauLevenshtein";
    case EditKind::OptimalAlignment: return "optimalAlignment";
    case EditKind::LongestCommonSubsequence: return "longestCommonSubsequence";
  }
  return "";
}

int min_length_for(const MetricDescriptor& d) {
  if (d.unit == Unit::NGram && !d.padded) return *d.n;
  if (d.unit == Unit::Shingle) return *d.n;
  if (d.family == Family::Fingerprint) return *d.n;
  return 1;
}

MetricDescriptor finish(MetricDescriptor d) {
  d.min_input_length = min_length_for(d);
  d.name = descriptor_name(d);
  return d;
}

std::vector<MetricDescriptor> build_catalog() {
  std::vector<MetricDescriptor> out;
  const std::array<bool, 2> norms = {false, true};

  for (auto kind : {EditKind::Levenshtein, EditKind::DamerauLevenshtein, EditKind::OptimalAlignment,
                    EditKind::LongestCommonSubsequence}) {
    for (bool norm : norms) {
      MetricDescriptor d;
      d.family = Family::Edit;
      d.unit = Unit::Character;
      d.edit_kind = kind;
      d.normalized = norm;
      out.push_back(finish(d));
    }
  }

  for (auto unit : {Unit::Character, Unit::Token}) {
    for (bool norm : norms) {
      MetricDescriptor d;
      d.family = Family::Equal;
      d.unit = unit;
      d.normalized = norm;
      out.push_back(finish(d));
    }
  }

  const std::array<Coefficient, 3> set_coefs = {Coefficient::Jaccard, Coefficient::Dice, Coefficient::Overlap};
  for (auto c : set_coefs) {
    for (bool norm : norms) {
      MetricDescriptor d;
      d.family = Family::Set;
      d.unit = Unit::Token;
      d.coefficient = c;
      d.normalized = norm;
      out.push_back(finish(d));
    }
  }
  for (int n = 2; n <= 5; ++n) {
    for (auto c : set_coefs) {
      // plain, normalized, normalized with padding
      for (int variant = 0; variant < 3; ++variant) {
        MetricDescriptor d;
        d.family = Family::Set;
        d.unit = Unit::NGram;
        d.n = n;
        d.coefficient = c;
        d.normalized = variant > 0;
        d.padded = variant == 2;
        out.push_back(finish(d));
      }
    }
  }
  for (int n = 2; n <= 3; ++n) {
    for (auto c : set_coefs) {
      for (bool norm : norms) {
        MetricDescriptor d;
        d.family = Family::Set;
        d.unit = Unit::Shingle;
        d.n = n;
        d.coefficient = c;
        d.normalized = norm;
        out.push_back(finish(d));
      }
    }
  }

  std::vector<std::pair<Unit, std::optional<int>>> profile_units = {{Unit::Token, std::nullopt}};
  for (int n = 2; n <= 5; ++n) profile_units.emplace_back(Unit::NGram, n);
  for (int n = 2; n <= 3; ++n) profile_units.emplace_back(Unit::Shingle, n);
  for (const auto& [unit, n] : profile_units) {
    for (auto w : {Weighting::Bool, Weighting::TermFrequency, Weighting::NormalizedTermFrequency}) {
      MetricDescriptor d;
      d.family = Family::Profile;
      d.unit = unit;
      d.n = n;
      d.weighting = w;
      d.distance = Distance::Cosine;
      d.normalized = true;
      out.push_back(finish(d));
    }
  }
  for (const auto& [unit, n] : profile_units) {
    MetricDescriptor d;
    d.family = Family::Profile;
    d.unit = unit;
    d.n = n;
    d.weighting = Weighting::TermFrequency;
    d.distance = Distance::Manhattan;
    d.normalized = true;
    out.push_back(finish(d));
  }

  for (int n = 2; n <= 5; ++n) {
    for (auto c : {Coefficient::Jaccard, Coefficient::Dice, Coefficient::Overlap,
                   Coefficient::LongestCommonSubsequence, Coefficient::OptimalAlignment}) {
      for (bool norm : norms) {
        MetricDescriptor d;
        d.family = Family::Fingerprint;
        d.unit = Unit::NGram;
        d.n = n;
        d.coefficient = c;
        d.normalized = norm;
        out.push_back(finish(d));
      }
    }
  }
  return out;
}

}  // namespace

NormalizationKind MetricDescriptor::normalization() const {
  switch (family) {
    case Family::Edit:
    case Family::Equal:
      return NormalizationKind::Edit;
    case Family::Fingerprint:
      return NormalizationKind::NGram;
    case Family::Set:
    case Family::Profile:
      return unit == Unit::NGram ? NormalizationKind::NGram : NormalizationKind::Shingle;
  }
  return NormalizationKind::Edit;
}

std::string descriptor_name(const MetricDescriptor& d) {
  const std::string norm = d.normalized ? "Normalized" : "";
  switch (d.family) {
    case Family::Edit:
      return std::string(edit_word(*d.edit_kind)) + norm;
    case Family::Equal:
      return (d.unit == Unit::Token ? std::string("tokenEqual") : std::string("equal")) + norm;
    case Family::Set:
      return lower_first(unit_word(d)) + std::string(coefficient_word(*d.coefficient)) + norm +
             (d.padded ? "Padding" : "");
    case Family::Profile:
      if (d.distance == Distance::Manhattan) return "manhattan" + unit_word(d) + norm;
      return "cosine" + unit_word(d) + norm + std::string(weighting_word(*d.weighting));
    case Family::Fingerprint:
      return "winnowing" + unit_word(d) + std::string(coefficient_word(*d.coefficient)) + norm;
  }
  return {};
}

Score score_decoded(const MetricDescriptor& d, std::u32string_view a, std::u32string_view b) {
  std::u32string na, nb;
  if (d.normalized) {
    na = normalize(a, d.normalization());
    nb = normalize(b, d.normalization());
    a = na;
    b = nb;
  }
  switch (d.family) {
    case Family::Equal:
      if (d.unit == Unit::Token) return tokenize(a) == tokenize(b) ? 1.0 : 0.0;
      return a == b ? 1.0 : 0.0;
    case Family::Edit:
      return edit_similarity(a, b, *d.edit_kind);
    case Family::Set:
      return set_similarity(a, b, d.unit, d.n, *d.coefficient, d.padded);
    case Family::Profile:
      return profile_similarity(a, b, d.unit, d.n, *d.weighting, *d.distance);
    case Family::Fingerprint:
      return winnowing_similarity(a, b, *d.n, *d.coefficient);
  }
  return std::nullopt;
}

Score score(const MetricDescriptor& d, std::string_view a, std::string_view b) {
  return score_decoded(d, utf8_decode(a), utf8_decode(b));
}

const std::vector<MetricDescriptor>& catalog() {
  static const std::vector<MetricDescriptor> all = build_catalog();
  return all;
}

std::vector<MetricDescriptor> enumerate() { return catalog(); }

const MetricDescriptor& resolve(std::string_view name) {
  static const auto index = [] {
    std::unordered_map<std::string, const MetricDescriptor*> m;
    for (const auto& d : catalog()) m.emplace(d.name, &d);
    return m;
  }();
  const auto it = index.find(std::string(name));
  if (it == index.end()) throw UnknownMetric(std::string(name));
  return *it->second;
}

}  // namespace posthist::metrics
