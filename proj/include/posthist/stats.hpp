#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace posthist::stats {

class StatsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct StatsSummary {
  double mean = 0;
  double sd = 0;  // sample standard deviation, 0 for n = 1
  double median = 0;
  double q1 = 0;
  double q3 = 0;
  std::size_t n = 0;
};

// Throws StatsError on empty input.
StatsSummary describe(std::span<const double> values);

// Linear interpolation between order statistics at h = (n-1)q (R type 7).
double quantile(std::vector<double> values, double q);

double mean(std::span<const double> values);
double sample_sd(std::span<const double> values);

// 1-based ranks; tied values share the mean of their positions.
std::vector<double> mean_ranks(std::span<const double> values);

// Pearson correlation of the mean ranks. 0 when either side is constant.
// Throws StatsError on length mismatch or fewer than two pairs.
double spearman(std::span<const double> x, std::span<const double> y);

// Hinkle: negligible < .3 <= low < .5 <= moderate < .7 <= high < .9 <= very high.
std::string_view hinkle_label(double rho);

// (mean(a) - mean(b)) / pooled SD. Throws StatsError when a sample has fewer
// than two values or the pooled SD is zero.
double cohens_d(std::span<const double> a, std::span<const double> b);

// Cohen: negligible < .2 <= small < .5 <= medium < .8 <= large, on |d|.
std::string_view cohen_label(double d);

struct RankSumResult {
  double w = 0;  // rank sum of a in the pooled sample
  double u = 0;  // w - na(na+1)/2
  double p = 1;  // two-sided
  bool exact = false;
};

// Two-sided Wilcoxon rank-sum test. Combined sizes up to 10 use the exact
// permutation distribution of the mean-rank sum; larger samples use the
// normal approximation with tie-corrected variance and continuity correction.
// Throws StatsError if either sample is empty.
RankSumResult wilcoxon_ranksum(std::span<const double> a, std::span<const double> b);

inline constexpr std::size_t kExactRankSumLimit = 10;

}  // namespace posthist::stats
