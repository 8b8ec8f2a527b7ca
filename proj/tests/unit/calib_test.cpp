#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "orthosim/calib.hpp"
#include "orthosim/error.hpp"
#include "orthosim/ingest.hpp"
#include "support.hpp"

using namespace orthosim;

namespace {

TokenTable repeated(const std::vector<std::pair<std::string, int>>& counts) {
  std::vector<std::string> s;
  for (const auto& [type, n] : counts) s.insert(s.end(), n, type);
  return TokenTable::from_surfaces(s);
}

LemmaMap parse(const std::string& tsv, const TokenTable& table) {
  std::istringstream in(tsv);
  return parse_lemma_map(in, table, "t");
}

TokenTable fund_table() {
  const auto m = load_manifest(testing_support::fixture_dir() / "fund" / "manifest.json");
  return tokenize(read_document(m.at("fund")));
}

}  // namespace

TEST(LemmaMap, AbafundiGroupTypeRatio) {
  const auto table = fund_table();
  const auto map = load_lemma_map(testing_support::fixture_dir() / "fund" / "fund_lemmas.tsv",
                                  table, "fund");
  ASSERT_EQ(map.groups.size(), 2u);
  const auto& g = map.groups[0];
  EXPECT_EQ(g.base_type, "abafundi");
  EXPECT_EQ(g.beta, 1u);
  EXPECT_EQ(g.mu(), 6u);
  EXPECT_EQ(g.base_token_count, 20u);
  EXPECT_EQ(g.modified_token_count, 18u);
  EXPECT_FALSE(g.modified_types.contains(g.base_type));
  EXPECT_TRUE(map.missing_types.empty());
}

TEST(LemmaMap, UmfundiTokenRatio) {
  const auto table = fund_table();
  const auto map = parse("umfundi\tkunomfundi\tmfundi\n", table);
  ASSERT_EQ(map.groups.size(), 1u);
  EXPECT_EQ(map.groups[0].base_token_count, 6u);
  EXPECT_EQ(map.groups[0].modified_token_count, 2u);
  EXPECT_EQ(map.groups[0].mu(), 2u);
}

TEST(LemmaMap, ModifiedCountIsSumOfTypeCounts) {
  const auto table = repeated({{"a", 3}, {"b", 2}, {"c", 5}, {"d", 1}});
  const auto map = parse("# header\na\tb\tc\tzz\n\nd\n", table);
  ASSERT_EQ(map.groups.size(), 2u);
  EXPECT_EQ(map.groups[0].modified_token_count, 7u);
  EXPECT_EQ(map.missing_types, std::vector<std::string>{"zz"});
}

TEST(LemmaMap, OverlapRejected) {
  const auto table = repeated({{"a", 1}});
  EXPECT_THROW(parse("a\tb\nc\tb\n", table), OverlappingGroups);
  EXPECT_THROW(parse("a\tb\nb\tc\n", table), OverlappingGroups);
  EXPECT_THROW(parse("a\ta\n", table), OverlappingGroups);
}

TEST(LemmaMap, MalformedLines) {
  const auto table = repeated({{"a", 1}});
  try {
    parse("a\tb\n\tc\n", table);
    FAIL() << "expected MalformedMap";
  } catch (const MalformedMap& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse("a\tb c\n", table), MalformedMap);
  EXPECT_THROW(load_lemma_map("/nonexistent/map.tsv", table), MissingFile);
}

TEST(Median, MidpointConvention) {
  EXPECT_EQ(median({3.0}), 3.0);
  EXPECT_EQ(median({3.0, 1.0}), 2.0);
  EXPECT_EQ(median({5.0, 1.0, 3.0}), 3.0);
  EXPECT_EQ(median({4.0, 1.0, 3.0, 2.0}), 2.5);
  EXPECT_THROW(median({}), Error);
}

TEST(CalibrationFactors, SingleGroup) {
  const auto table = repeated({{"base", 10}, {"m1", 4}, {"m2", 1}, {"m3", 1}, {"m4", 1}, {"m5", 1}, {"m6", 1}});
  const auto f = calibration_factors(parse("base\tm1\tm2\tm3\tm4\tm5\tm6\n", table));
  EXPECT_DOUBLE_EQ(f.lambda_t, 10.0 / 9.0);
  EXPECT_DOUBLE_EQ(f.lambda_theta, 1.0 / 6.0);
  EXPECT_EQ(f.groups_used, 1u);
  EXPECT_EQ(f.groups_skipped, 0u);
}

TEST(CalibrationFactors, TwoGroupMedianIsMidpoint) {
  const auto table = fund_table();
  const auto map = load_lemma_map(testing_support::fixture_dir() / "fund" / "fund_lemmas.tsv",
                                  table, "fund");
  const auto f = calibration_factors(map);
  EXPECT_NEAR(f.lambda_t, (10.0 / 9.0 + 3.0) / 2.0, 1e-12);
  EXPECT_NEAR(f.lambda_t, 2.056, 5e-4);
  EXPECT_NEAR(f.lambda_theta, (1.0 / 6.0 + 1.0 / 2.0) / 2.0, 1e-12);
}

TEST(CalibrationFactors, ZeroModifiedGroupSkipped) {
  const auto table = repeated({{"a", 4}, {"b", 2}, {"c", 3}});
  const auto f = calibration_factors(parse("a\tb\nc\tnever\n", table));
  EXPECT_EQ(f.groups_used, 1u);
  EXPECT_EQ(f.groups_skipped, 1u);
  EXPECT_DOUBLE_EQ(f.lambda_t, 2.0);
  EXPECT_THROW(calibration_factors(parse("c\tnever\n", table)), NoUsableGroups);
}

TEST(CalibrationFactors, OrderAndScaleInvariance) {
  std::mt19937 rng(29);
  std::uniform_int_distribution<int> count(1, 30);
  std::uniform_int_distribution<int> mods(1, 4);
  for (int round = 0; round < 100; ++round) {
    LemmaMap map;
    const int groups = 1 + round % 7;
    for (int g = 0; g < groups; ++g) {
      LemmaGroup lg;
      lg.base_type = "b" + std::to_string(g);
      lg.base_token_count = count(rng);
      for (int m = mods(rng); m > 0; --m) lg.modified_types.insert(lg.base_type + "_" + std::to_string(m));
      lg.modified_token_count = count(rng);
      map.groups.push_back(lg);
    }
    const auto ref = calibration_factors(map);
    LemmaMap shuffled = map;
    std::shuffle(shuffled.groups.begin(), shuffled.groups.end(), rng);
    const auto f = calibration_factors(shuffled);
    EXPECT_EQ(f.lambda_t, ref.lambda_t);
    EXPECT_EQ(f.lambda_theta, ref.lambda_theta);
    LemmaMap scaled = map;
    for (auto& g : scaled.groups) {
      g.base_token_count *= 7;
      g.modified_token_count *= 7;
    }
    EXPECT_NEAR(calibration_factors(scaled).lambda_t, ref.lambda_t, 1e-12);
  }
}

TEST(CalibratedTtr, Examples) {
  EXPECT_NEAR(calibrated_ttr(0.50, 3.0, 2105, 3774), 0.4183, 5e-4);
  EXPECT_EQ(std::round(calibrated_ttr(0.50, 3.0, 2105, 3774) * 100) / 100, 0.42);
  EXPECT_DOUBLE_EQ(calibrated_ttr(1.0, 2.0, 50, 100), 1.0);
  EXPECT_THROW(calibrated_ttr(0.5, 1.0, 10, 20), DegenerateLambdaT);
  EXPECT_THROW(calibrated_ttr(0.5, 0.8, 10, 20), DegenerateLambdaT);
  EXPECT_THROW(calibrated_ttr(0.5, 3.0, 10, 0), EmptyCorpus);
}

TEST(CalibratedTtr, Monotonicity) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> theta(0.01, 2.0);
  std::uniform_real_distribution<double> lt(1.001, 20.0);
  std::uniform_int_distribution<std::size_t> tokens(1, 1000000);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = tokens(rng);
    const std::size_t types = std::uniform_int_distribution<std::size_t>(1, n)(rng);
    double a = theta(rng), b = theta(rng);
    if (a > b) std::swap(a, b);
    const double l = lt(rng);
    EXPECT_LE(calibrated_ttr(a, l, types, n), calibrated_ttr(b, l, types, n));
    double x = lt(rng), y = lt(rng);
    if (x > y) std::swap(x, y);
    const double th = theta(rng);
    EXPECT_GE(calibrated_ttr(th, x, types, n), calibrated_ttr(th, y, types, n));
  }
}
