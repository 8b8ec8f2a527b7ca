#include <algorithm>
#include <cmath>

#include "orthosim/error.hpp"
#include "orthosim/stats.hpp"

namespace orthosim::stats {

TestResult chi_square_independence(const ContingencyTable& table) {
  const std::size_t r = table.rows();
  const std::size_t c = table.cols();
  if (r < 2 || c < 2) throw InvalidTable("contingency table must be at least 2 x 2");

  std::vector<double> row_totals(r, 0.0);
  std::vector<double> col_totals(c, 0.0);
  for (std::size_t i = 0; i < r; ++i) {
    if (table.counts[i].size() != c) throw InvalidTable("contingency table rows differ in length");
    for (std::size_t j = 0; j < c; ++j) {
      const double v = table.counts[i][j];
      if (!std::isfinite(v) || v < 0.0) {
        throw InvalidTable("contingency table cells must be finite and nonnegative");
      }
      row_totals[i] += v;
      col_totals[j] += v;
    }
  }
  auto label = [](const std::vector<std::string>& labels, std::size_t i, const char* kind) {
    std::string s = std::string(kind) + " " + std::to_string(i);
    if (i < labels.size() && !labels[i].empty()) s += " (" + labels[i] + ")";
    return s;
  };
  for (std::size_t i = 0; i < r; ++i) {
    if (row_totals[i] == 0.0) throw ZeroMarginal(label(table.row_labels, i, "row"));
  }
  for (std::size_t j = 0; j < c; ++j) {
    if (col_totals[j] == 0.0) throw ZeroMarginal(label(table.col_labels, j, "column"));
  }

  double grand = 0.0;
  for (double t : row_totals) grand += t;

  double statistic = 0.0;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      const double expected = row_totals[i] * col_totals[j] / grand;
      const double diff = table.counts[i][j] - expected;
      statistic += diff * diff / expected;
    }
  }

  TestResult result;
  result.method = Method::chi_square;
  result.statistic = statistic;
  result.df = static_cast<int>((r - 1) * (c - 1));
  result.p_value = std::clamp(chi_square_sf(statistic, *result.df), 0.0, 1.0);
  for (double t : row_totals) result.n_per_group.push_back(static_cast<std::size_t>(std::llround(t)));
  bool small = false;
  for (std::size_t i = 0; i < r && !small; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      if (row_totals[i] * col_totals[j] / grand < 5.0) {
        small = true;
        break;
      }
    }
  }
  if (small) result.notes.emplace_back("some expected counts are below 5");
  return result;
}

}  // namespace orthosim::stats
