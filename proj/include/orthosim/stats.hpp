#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace orthosim::stats {

/// A non-empty vector of finite observations.
class Sample {
 public:
  explicit Sample(std::vector<double> values);
  template <typename Int>
  static Sample from_integers(const std::vector<Int>& values) {
    return Sample(std::vector<double>(values.begin(), values.end()));
  }

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  std::vector<double> values_;
};

/// r x c table of nonnegative cell values. Cells hold raw counts in the
/// usual case; row-normalized tables (percentages) are also accepted.
struct ContingencyTable {
  std::vector<std::vector<double>> counts;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;

  std::size_t rows() const noexcept { return counts.size(); }
  std::size_t cols() const noexcept { return counts.empty() ? 0 : counts.front().size(); }
};

enum class Method { shapiro_wilk, kruskal_wallis, mann_whitney, chi_square };
std::string_view to_string(Method m);

struct TestResult {
  Method method = Method::chi_square;
  double statistic = 0.0;
  std::optional<int> df;
  double p_value = 1.0;
  std::vector<std::size_t> n_per_group;
  std::vector<std::string> notes;
  std::optional<std::uint64_t> seed;
};

nlohmann::ordered_json to_json(const TestResult& r);

// ---- special functions ----------------------------------------------------

/// Regularized lower incomplete gamma P(a, x).
double regularized_gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double regularized_gamma_q(double a, double x);

/// Upper tail of the chi-square distribution with `df` degrees of freedom.
double chi_square_sf(double x, int df);
double chi_square_cdf(double x, int df);

double normal_cdf(double z);
/// Upper tail 1 - Phi(z), accurate far into the tail.
double normal_sf(double z);
/// Inverse of normal_cdf for p in (0, 1) (Wichura's AS 241).
double normal_quantile(double p);

// ---- ranks ----------------------------------------------------------------

struct Ranking {
  std::vector<double> ranks;  // mid-ranks, in input order
  double tie_sum = 0.0;       // sum over tie groups of t^3 - t
};

Ranking midranks(std::span<const double> values);

// ---- tests ----------------------------------------------------------------

inline constexpr std::size_t kShapiroWilkMaxN = 5000;

/// Shapiro-Wilk W with Royston's (1995) approximation for weights and
/// p-value. Valid for 3 <= n <= 5000.
TestResult shapiro_wilk(const Sample& s);

/// Kruskal-Wallis H with mid-ranks and tie correction; p from chi-square
/// with k - 1 degrees of freedom.
TestResult kruskal_wallis(std::span<const Sample> groups);

struct MannWhitneyU {
  double u_a = 0.0;
  double u_b = 0.0;
};

/// U statistics from mid-rank sums.
MannWhitneyU mann_whitney_u(const Sample& a, const Sample& b);

/// Two-sided Mann-Whitney test, normal approximation with tie-corrected
/// variance and 0.5 continuity correction. Statistic is min(U_a, U_b).
TestResult mann_whitney(const Sample& a, const Sample& b);

/// Pearson chi-square test of independence, no continuity correction.
TestResult chi_square_independence(const ContingencyTable& table);

// ---- test selection -------------------------------------------------------

enum class Branch { nonparametric, parametric_applicable };

struct TestPlan {
  double alpha = 0.05;
  std::uint64_t seed = 0;
  std::vector<TestResult> normality;  // one per group
  bool any_non_normal = false;
  Branch branch = Branch::nonparametric;
  /// Kruskal-Wallis for k > 2 groups, Mann-Whitney for k = 2; always run.
  TestResult result;
};

inline constexpr std::uint64_t kDefaultSeed = 20160609;

/// Uniform random subsample of `n` values without replacement, keeping the
/// original order. Deterministic for a given seed on every platform.
Sample subsample(const Sample& s, std::size_t n, std::uint64_t seed);

/// Normality-gated test choice: Shapiro-Wilk per group (groups above 5000
/// are subsampled with `seed`), then the rank test for k groups.
TestPlan choose_tests(std::span<const Sample> groups, double alpha = 0.05,
                      std::uint64_t seed = kDefaultSeed);

nlohmann::ordered_json to_json(const TestPlan& plan);

}  // namespace orthosim::stats
