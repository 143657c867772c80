#pragma once

// Reference computations written directly from the definitions. They share
// no code with the library beyond plain data types.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace posthist::testing::oracle {

// Every string over `alphabet` with length <= max_len, indexed by id. Ids grow
// with length; within one length the first character is the least
// significant digit.
class StringUniverse {
 public:
  StringUniverse(std::u32string alphabet, int max_len);

  std::size_t size() const { return strings_.size(); }
  const std::u32string& at(std::size_t id) const { return strings_[id]; }
  std::size_t id_of(const std::u32string& s) const;

  enum class Moves { Levenshtein, Damerau, Indel };

  // All-pairs shortest edit-sequence lengths by breadth-first search over the
  // universe. Searches run from one representative per orbit of alphabet
  // permutations and reversal; other rows are mapped through the orbit.
  class Distances {
   public:
    std::uint8_t operator()(std::size_t a, std::size_t b) const {
      return rows_[row_of_[a] * n_ + transform_[static_cast<std::size_t>(via_[a]) * n_ + b]];
    }

   private:
    friend class StringUniverse;
    std::size_t n_ = 0;
    std::vector<std::uint8_t> rows_;
    std::vector<std::size_t> row_of_;
    std::vector<int> via_;
    std::vector<std::uint32_t> transform_;
  };
  Distances shortest_paths(Moves moves) const;

  // Optimal string alignment distance for every ordered pair, by the
  // first-character recursion over the universe (n * n bytes).
  std::vector<std::uint8_t> restricted_edit_table() const;

 private:
  std::u32string alphabet_;
  int max_len_;
  std::vector<std::u32string> strings_;
  std::vector<std::size_t> offset_;  // first id of each length
};

// Set and profile similarity evaluated from the definitions over explicit
// element multisets. nullopt when an input yields no elements.
enum class Unit { Token, NGram, Shingle };
enum class SetCoefficient { Jaccard, Dice, Overlap };
enum class Weight { Bool, Tf, NormalizedTf };
enum class Norm { None, Edit, NGram, Shingle };

std::u32string normalize(const std::u32string& s, Norm kind);
std::optional<std::map<std::u32string, int>> elements(const std::u32string& s, Unit unit, int n, bool padded);
std::optional<double> set_similarity(const std::u32string& a, const std::u32string& b, Unit unit, int n, bool padded,
                                     SetCoefficient c);
std::optional<double> cosine(const std::u32string& a, const std::u32string& b, Unit unit, int n, Weight w);
std::optional<double> manhattan(const std::u32string& a, const std::u32string& b, Unit unit, int n, Weight w);

// Winnowing: hash of every n-gram evaluated as a polynomial (base 1000003,
// modulus 2^61 - 1), windows of n hashes, rightmost minimum per window.
std::vector<std::uint64_t> fingerprints(const std::u32string& s, int n);
enum class FingerprintComparison { Jaccard, Dice, Overlap, Lcs, RestrictedEdit };
std::optional<double> winnowing(const std::u32string& a, const std::u32string& b, int n, FingerprintComparison c);

// Longest common subsequence by enumerating subsequences of the shorter side.
// Only for short sequences (2^n subsets).
template <typename T>
std::size_t lcs_by_subsets(const std::vector<T>& a, const std::vector<T>& b);

double spearman(const std::vector<double>& x, const std::vector<double>& y);

// Two-sided exact rank-sum p over every split of the pooled sample.
double ranksum_exact_p(const std::vector<double>& a, const std::vector<double>& b);

// R type-7 quantile.
double quantile7(std::vector<double> v, double q);

double mcc(long tp, long fp, long tn, long fn);

template <typename T>
std::size_t lcs_by_subsets(const std::vector<T>& a, const std::vector<T>& b) {
  const auto& s = a.size() <= b.size() ? a : b;
  const auto& t = a.size() <= b.size() ? b : a;
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << s.size()); ++mask) {
    std::vector<T> sub;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (mask & (1u << i)) sub.push_back(s[i]);
    }
    if (sub.size() <= best) continue;
    std::size_t k = 0;
    for (std::size_t j = 0; j < t.size() && k < sub.size(); ++j) {
      if (t[j] == sub[k]) ++k;
    }
    if (k == sub.size()) best = sub.size();
  }
  return best;
}

}  // namespace posthist::testing::oracle
