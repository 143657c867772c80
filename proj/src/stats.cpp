#include "posthist/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace posthist::stats {

double mean(std::span<const double> values) {
  if (values.empty()) throw StatsError("mean of empty sample");
  const double sum = std::accumulate(values.begin(), values.end(), 0.0);
  return sum / static_cast<double>(values.size());
}

double sample_sd(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double m = mean(values);
  double ss = 0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw StatsError("quantile of empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw StatsError("quantile level outside [0,1]");
  std::sort(values.begin(), values.end());
  const double h = static_cast<double>(values.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

StatsSummary describe(std::span<const double> values) {
  if (values.empty()) throw StatsError("describe needs at least one value");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  StatsSummary s;
  s.n = v.size();
  s.mean = mean(v);
  s.sd = sample_sd(v);
  s.median = quantile(v, 0.5);
  s.q1 = quantile(v, 0.25);
  s.q3 = quantile(v, 0.75);
  return s;
}

std::vector<double> mean_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double r = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw StatsError("spearman: length mismatch");
  if (x.size() < 2) throw StatsError("spearman needs at least two pairs");
  const auto rx = mean_ranks(x);
  const auto ry = mean_ranks(y);
  const double mx = mean(rx);
  const double my = mean(ry);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) return 0.0;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::string_view hinkle_label(double rho) {
  const double a = std::fabs(rho);
  if (a < 0.3) return "negligible";
  if (a < 0.5) return "low";
  if (a < 0.7) return "moderate";
  if (a < 0.9) return "high";
  return "very high";
}

double cohens_d(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw StatsError("cohens_d needs two values per sample");
  const double sa = sample_sd(a);
  const double sb = sample_sd(b);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double pooled = std::sqrt(((na - 1) * sa * sa + (nb - 1) * sb * sb) / (na + nb - 2));
  if (pooled == 0) throw StatsError("cohens_d: pooled standard deviation is zero");
  return (mean(a) - mean(b)) / pooled;
}

std::string_view cohen_label(double d) {
  const double a = std::fabs(d);
  if (a < 0.2) return "negligible";
  if (a < 0.5) return "small";
  if (a < 0.8) return "medium";
  return "large";
}

namespace {

// Visits every na-subset of n indices; fn receives the subset's rank sum.
template <typename Fn>
void for_each_subset_sum(const std::vector<double>& ranks, std::size_t na, Fn&& fn) {
  std::vector<std::size_t> idx(na);
  std::iota(idx.begin(), idx.end(), 0);
  const std::size_t n = ranks.size();
  while (true) {
    double s = 0;
    for (auto i : idx) s += ranks[i];
    fn(s);
    std::size_t k = na;
    while (k > 0 && idx[k - 1] == n - na + (k - 1)) --k;
    if (k == 0) return;
    ++idx[k - 1];
    for (std::size_t m = k; m < na; ++m) idx[m] = idx[m - 1] + 1;
  }
}

}  // namespace

RankSumResult wilcoxon_ranksum(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw StatsError("wilcoxon_ranksum needs two nonempty samples");
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const auto ranks = mean_ranks(pooled);
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  const std::size_t n = na + nb;

  RankSumResult r;
  r.w = std::accumulate(ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(na), 0.0);
  r.u = r.w - static_cast<double>(na * (na + 1)) / 2.0;
  const double expected = static_cast<double>(na) * static_cast<double>(n + 1) / 2.0;
  const double observed = std::fabs(r.w - expected);

  if (n <= kExactRankSumLimit) {
    r.exact = true;
    std::size_t total = 0, extreme = 0;
    for_each_subset_sum(ranks, na, [&](double s) {
      ++total;
      if (std::fabs(s - expected) >= observed - 1e-9) ++extreme;
    });
    r.p = static_cast<double>(extreme) / static_cast<double>(total);
    return r;
  }

  std::vector<double> sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  double tie_term = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }
  const double dn = static_cast<double>(n);
  const double variance = static_cast<double>(na) * static_cast<double>(nb) / 12.0 *
                          ((dn + 1) - tie_term / (dn * (dn - 1)));
  if (variance <= 0) {
    r.p = 1.0;
    return r;
  }
  const double z = std::max(0.0, observed - 0.5) / std::sqrt(variance);
  r.p = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
  return r;
}

}  // namespace posthist::stats
