#include <algorithm>
#include <set>
#include <span>

#include "posthist/edit_distance.hpp"
#include "posthist/metrics.hpp"

namespace posthist::metrics {

namespace {

constexpr std::uint64_t kModulus = (std::uint64_t{1} << 61) - 1;
constexpr std::uint64_t kBase = 1000003;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  std::uint64_t r = static_cast<std::uint64_t>(p & kModulus) + static_cast<std::uint64_t>(p >> 61);
  if (r >= kModulus) r -= kModulus;
  return r;
}

std::uint64_t addmod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  if (r >= kModulus) r -= kModulus;
  return r;
}

}  // namespace

std::vector<std::uint64_t> ngram_hashes(std::u32string_view s, int n) {
  const auto k = static_cast<std::size_t>(n);
  std::vector<std::uint64_t> hashes;
  if (n < 1 || s.size() < k) return hashes;
  hashes.reserve(s.size() - k + 1);
  std::uint64_t top = 1;  // kBase^(n-1)
  for (std::size_t i = 1; i < k; ++i) top = mulmod(top, kBase);
  std::uint64_t h = 0;
  for (std::size_t i = 0; i < k; ++i) h = addmod(mulmod(h, kBase), s[i]);
  hashes.push_back(h);
  for (std::size_t i = k; i < s.size(); ++i) {
    const std::uint64_t drop = mulmod(s[i - k], top);
    h = addmod(h, kModulus - drop);
    h = addmod(mulmod(h, kBase), s[i]);
    hashes.push_back(h);
  }
  return hashes;
}

std::optional<std::vector<Fingerprint>> winnow(std::u32string_view s, int n) {
  const auto hashes = ngram_hashes(s, n);
  if (hashes.empty()) return std::nullopt;
  const std::size_t window = std::min(hashes.size(), static_cast<std::size_t>(n));
  std::vector<Fingerprint> out;
  for (std::size_t start = 0; start + window <= hashes.size(); ++start) {
    std::size_t best = start;
    for (std::size_t i = start + 1; i < start + window; ++i) {
      if (hashes[i] <= hashes[best]) best = i;
    }
    if (out.empty() || out.back().position != best) out.push_back({hashes[best], best});
  }
  return out;
}

Score winnowing_similarity(std::u32string_view a, std::u32string_view b, int n, Coefficient comparison) {
  const auto fa = winnow(a, n);
  const auto fb = winnow(b, n);
  if (!fa || !fb) return std::nullopt;
  std::vector<std::uint64_t> seq_a, seq_b;
  for (const auto& f : *fa) seq_a.push_back(f.hash);
  for (const auto& f : *fb) seq_b.push_back(f.hash);

  if (comparison == Coefficient::LongestCommonSubsequence || comparison == Coefficient::OptimalAlignment) {
    const std::span<const std::uint64_t> sa(seq_a);
    const std::span<const std::uint64_t> sb(seq_b);
    const double longest = static_cast<double>(std::max(seq_a.size(), seq_b.size()));
    const double value = comparison == Coefficient::LongestCommonSubsequence
                             ? static_cast<double>(lcs_length(sa, sb))
                             : longest - static_cast<double>(optimal_alignment_distance(sa, sb));
    return value / longest;
  }

  const std::set<std::uint64_t> set_a(seq_a.begin(), seq_a.end());
  const std::set<std::uint64_t> set_b(seq_b.begin(), seq_b.end());
  std::size_t inter = 0;
  for (auto h : set_a) inter += set_b.count(h);
  const double na = static_cast<double>(set_a.size());
  const double nb = static_cast<double>(set_b.size());
  const double i = static_cast<double>(inter);
  switch (comparison) {
    case Coefficient::Jaccard: return i / (na + nb - i);
    case Coefficient::Dice: return 2.0 * i / (na + nb);
    default: return i / std::min(na, nb);
  }
}

}  // namespace posthist::metrics
