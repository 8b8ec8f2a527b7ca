#include <algorithm>
#include <cmath>
#include <numeric>

#include "orthosim/error.hpp"
#include "orthosim/stats.hpp"

namespace orthosim::stats {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InvalidSample("sample must contain at least one value");
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidSample("sample values must be finite");
  }
}

Ranking midranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  Ranking r;
  r.ranks.assign(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    // Positions i..j-1 share the mean of ranks i+1..j.
    const double mid = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) r.ranks[order[k]] = mid;
    const auto t = static_cast<double>(j - i);
    r.tie_sum += t * t * t - t;
    i = j;
  }
  return r;
}

TestResult kruskal_wallis(std::span<const Sample> groups) {
  const std::size_t k = groups.size();
  if (k < 2) throw TooFewGroups("Kruskal-Wallis needs at least two groups");

  std::vector<double> pooled;
  TestResult result;
  result.method = Method::kruskal_wallis;
  for (const auto& g : groups) {
    pooled.insert(pooled.end(), g.values().begin(), g.values().end());
    result.n_per_group.push_back(g.size());
  }
  const auto n = static_cast<double>(pooled.size());
  if (pooled.size() < k + 1) {
    throw InvalidSample("Kruskal-Wallis needs at least k + 1 observations in total");
  }

  const Ranking ranking = midranks(pooled);
  const double correction = 1.0 - ranking.tie_sum / (n * n * n - n);
  if (correction <= 0.0) throw AllValuesTied();

  double sum_sq = 0.0;
  std::size_t offset = 0;
  for (const auto& g : groups) {
    double rank_sum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) rank_sum += ranking.ranks[offset + i];
    offset += g.size();
    sum_sq += rank_sum * rank_sum / static_cast<double>(g.size());
  }
  const double h = 12.0 / (n * (n + 1.0)) * sum_sq - 3.0 * (n + 1.0);
  // Floating-point cancellation can leave a tiny negative value for H = 0.
  result.statistic = std::max(0.0, h / correction);
  result.df = static_cast<int>(k - 1);
  result.p_value = std::clamp(chi_square_sf(result.statistic, *result.df), 0.0, 1.0);
  if (ranking.tie_sum > 0.0) result.notes.emplace_back("tie correction applied");
  return result;
}

MannWhitneyU mann_whitney_u(const Sample& a, const Sample& b) {
  std::vector<double> pooled(a.values().begin(), a.values().end());
  pooled.insert(pooled.end(), b.values().begin(), b.values().end());
  const Ranking ranking = midranks(pooled);
  double rank_sum_a = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) rank_sum_a += ranking.ranks[i];
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  MannWhitneyU u;
  u.u_a = rank_sum_a - na * (na + 1.0) / 2.0;
  u.u_b = na * nb - u.u_a;
  return u;
}

TestResult mann_whitney(const Sample& a, const Sample& b) {
  const auto [u_a, u_b] = mann_whitney_u(a, b);
  std::vector<double> pooled(a.values().begin(), a.values().end());
  pooled.insert(pooled.end(), b.values().begin(), b.values().end());
  const double tie_sum = midranks(pooled).tie_sum;

  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  const double n = na + nb;
  const double variance = na * nb / 12.0 * ((n + 1.0) - tie_sum / (n * (n - 1.0)));
  if (!(variance > 0.0)) throw AllValuesTied();

  TestResult result;
  result.method = Method::mann_whitney;
  result.statistic = std::min(u_a, u_b);
  result.n_per_group = {a.size(), b.size()};
  const double mean = na * nb / 2.0;
  const double z = std::max(0.0, (std::fabs(result.statistic - mean) - 0.5) / std::sqrt(variance));
  result.p_value = std::clamp(2.0 * normal_sf(z), 0.0, 1.0);
  if (tie_sum > 0.0) result.notes.emplace_back("tie correction applied");
  if (a.size() < 20 || b.size() < 20) {
    result.notes.emplace_back("normal approximation with a group below n = 20; p-value is approximate");
  }
  return result;
}

}  // namespace orthosim::stats
