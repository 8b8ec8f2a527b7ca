// Shapiro-Wilk W test following Royston, "Remark AS R94", Applied
// Statistics 44 (1995): approximate weights from Blom-type normal scores and
// a normalizing transform of W for the p-value.

#include <algorithm>
#include <cmath>
#include <numbers>

#include "orthosim/error.hpp"
#include "orthosim/stats.hpp"

namespace orthosim::stats {
namespace {

template <std::size_t N>
double poly(const double (&c)[N], double x) {
  double result = c[N - 1];
  for (std::size_t i = N - 1; i-- > 0;) result = result * x + c[i];
  return result;
}

constexpr double kC1[] = {0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056};
constexpr double kC2[] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
constexpr double kC3[] = {0.5440, -0.39978, 0.025054, -6.714e-4};
constexpr double kC4[] = {1.3822, -0.77857, 0.062767, -0.0020322};
constexpr double kC5[] = {-1.5861, -0.31082, -0.083751, 0.0038915};
constexpr double kC6[] = {-0.4803, -0.082676, 0.0030302};
constexpr double kG[] = {-2.273, 0.459};

// Antisymmetric weights a_1..a_{n/2} for the upper half of the order
// statistics.
std::vector<double> weights(std::size_t n) {
  const std::size_t half = n / 2;
  std::vector<double> a(half);
  if (n == 3) {
    a[0] = std::sqrt(0.5);
    return a;
  }
  const auto an = static_cast<double>(n);
  std::vector<double> m(half);
  double summ2 = 0.0;
  for (std::size_t i = 0; i < half; ++i) {
    m[i] = normal_quantile((static_cast<double>(i + 1) - 0.375) / (an + 0.25));
    summ2 += m[i] * m[i];
  }
  summ2 *= 2.0;
  const double ssumm2 = std::sqrt(summ2);
  const double rsn = 1.0 / std::sqrt(an);
  const double a1 = poly(kC1, rsn) - m[0] / ssumm2;

  std::size_t first_scaled;
  double fac;
  if (n > 5) {
    const double a2 = -m[1] / ssumm2 + poly(kC2, rsn);
    fac = std::sqrt((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1]) /
                    (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
    a[1] = a2;
    first_scaled = 2;
  } else {
    fac = std::sqrt((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1));
    first_scaled = 1;
  }
  a[0] = a1;
  for (std::size_t i = first_scaled; i < half; ++i) a[i] = -m[i] / fac;
  return a;
}

double p_value(double w, std::size_t n) {
  const auto an = static_cast<double>(n);
  if (n == 3) {
    // Exact null distribution for three observations.
    const double pw = 6.0 / std::numbers::pi * (std::asin(std::sqrt(w)) - std::numbers::pi / 3.0);
    return std::clamp(pw, 0.0, 1.0);
  }
  double y = std::log(1.0 - w);
  double mean;
  double sd;
  if (n <= 11) {
    const double gamma = poly(kG, an);
    if (y >= gamma) return 1e-99;
    y = -std::log(gamma - y);
    mean = poly(kC3, an);
    sd = std::exp(poly(kC4, an));
  } else {
    const double ln_n = std::log(an);
    mean = poly(kC5, ln_n);
    sd = std::exp(poly(kC6, ln_n));
  }
  return normal_sf((y - mean) / sd);
}

}  // namespace

TestResult shapiro_wilk(const Sample& s) {
  const std::size_t n = s.size();
  if (n < 3) throw SampleTooSmall("Shapiro-Wilk needs at least 3 observations");
  if (n > kShapiroWilkMaxN) {
    throw SampleTooLarge("Shapiro-Wilk is limited to 5000 observations; subsample first");
  }

  std::vector<double> x(s.values().begin(), s.values().end());
  std::sort(x.begin(), x.end());
  if (x.back() - x.front() <= 0.0) throw ZeroVariance();

  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  double ssq = 0.0;
  for (double v : x) ssq += (v - mean) * (v - mean);

  const auto a = weights(n);
  double numerator = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) numerator += a[i] * (x[n - 1 - i] - x[i]);
  const double w = std::min(1.0, numerator * numerator / ssq);

  TestResult result;
  result.method = Method::shapiro_wilk;
  result.statistic = w;
  result.n_per_group = {n};
  result.p_value = std::clamp(p_value(w, n), 0.0, 1.0);
  return result;
}

}  // namespace orthosim::stats
