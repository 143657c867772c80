#pragma once

// Edit distances over arbitrary element sequences. Characters (char32_t) and
// Winnowing fingerprint hashes (uint64_t) both go through these templates.

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace posthist::metrics {

namespace detail {

inline std::size_t min3(std::size_t x, std::size_t y, std::size_t z) {
  const std::size_t m = x < y ? x : y;
  return m < z ? m : z;
}

}  // namespace detail

// Insertions, deletions and substitutions.
template <typename T>
std::size_t levenshtein_distance(std::span<const T> a, std::span<const T> b) {
  if (a.size() < b.size()) std::swap(a, b);
  thread_local std::vector<std::size_t> row;
  row.resize(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    const T ai = a[i - 1];
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = detail::min3(up + 1, row[j - 1] + 1, diag + (ai == b[j - 1] ? 0 : 1));
      diag = up;
    }
  }
  return row[b.size()];
}

// Optimal string alignment: Levenshtein plus transposition of adjacent
// elements, where no substring is edited more than once.
template <typename T>
std::size_t optimal_alignment_distance(std::span<const T> a, std::span<const T> b) {
  const std::size_t m = a.size();
  const std::size_t n = b.size();
  thread_local std::vector<std::size_t> rows;
  rows.resize(3 * (n + 1));
  std::size_t* prev2 = rows.data();
  std::size_t* prev = prev2 + (n + 1);
  std::size_t* cur = prev + (n + 1);
  for (std::size_t j = 0; j <= n; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= m; ++i) {
    cur[0] = i;
    const T ai = a[i - 1];
    for (std::size_t j = 1; j <= n; ++j) {
      const std::size_t best = detail::min3(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ai == b[j - 1] ? 0 : 1));
      const bool swapped = (i > 1) & (j > 1) && (ai == b[j - 2]) & (a[i - 2] == b[j - 1]);
      const std::size_t transpose = swapped ? prev2[j - 2] + 1 : best;
      cur[j] = transpose < best ? transpose : best;
    }
    std::swap(prev2, prev);
    std::swap(prev, cur);
  }
  return prev[n];
}

// Unrestricted Damerau-Levenshtein (Lowrance-Wagner with unit costs).
template <typename T>
std::size_t damerau_levenshtein_distance(std::span<const T> a, std::span<const T> b) {
  const std::size_t m = a.size();
  const std::size_t n = b.size();
  const std::size_t inf = m + n;
  const std::size_t w = n + 2;

  // Per column of b: the last row of a holding the same element.
  thread_local std::vector<std::size_t> last_row;
  last_row.assign(n, 0);

  thread_local std::vector<std::size_t> d;
  d.resize((m + 2) * w);
  auto at = [&](std::size_t i, std::size_t j) -> std::size_t& { return d[i * w + j]; };
  at(0, 0) = inf;
  for (std::size_t i = 0; i <= m; ++i) {
    at(i + 1, 0) = inf;
    at(i + 1, 1) = i;
  }
  for (std::size_t j = 0; j <= n; ++j) {
    at(0, j + 1) = inf;
    at(1, j + 1) = j;
  }
  for (std::size_t i = 1; i <= m; ++i) {
    std::size_t last_match_col = 0;
    for (std::size_t j = 1; j <= n; ++j) {
      const std::size_t i1 = last_row[j - 1];
      const std::size_t j1 = last_match_col;
      std::size_t cost = 1;
      if (a[i - 1] == b[j - 1]) {
        cost = 0;
        last_match_col = j;
        last_row[j - 1] = i;
      }
      const std::size_t best = detail::min3(at(i, j) + cost, at(i + 1, j) + 1, at(i, j + 1) + 1);
      const std::size_t transpose = at(i1, j1) + (i - i1 - 1) + 1 + (j - j1 - 1);
      at(i + 1, j + 1) = transpose < best ? transpose : best;
    }
  }
  return at(m + 1, n + 1);
}

template <typename T>
std::size_t lcs_length(std::span<const T> a, std::span<const T> b) {
  if (a.size() < b.size()) std::swap(a, b);
  thread_local std::vector<std::size_t> row;
  row.assign(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = 0;
    const T ai = a[i - 1];
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      const std::size_t left = row[j - 1];
      const std::size_t skip = left > up ? left : up;
      row[j] = ai == b[j - 1] ? diag + 1 : skip;
      diag = up;
    }
  }
  return row[b.size()];
}

}  // namespace posthist::metrics
