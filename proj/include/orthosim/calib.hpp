#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "orthosim/tokenize.hpp"

namespace orthosim {

/// One base form and the agglutinated variants that carry the same meaning,
/// e.g. abafundi with nabafundi, kubafundi, ...
struct LemmaGroup {
  std::string base_type;
  std::size_t base_token_count = 0;      // B
  std::set<std::string> modified_types;  // disjoint from base_type
  std::size_t modified_token_count = 0;  // M
  std::size_t beta = 1;                  // base types
  std::size_t mu() const noexcept { return modified_types.size(); }
};

struct LemmaMap {
  std::vector<LemmaGroup> groups;
  std::string source_corpus_id;
  /// Types listed in the map that never occur in the table.
  std::vector<std::string> missing_types;
};

struct CalibrationFactors {
  double lambda_t = 0.0;      // median of B/M
  double lambda_theta = 0.0;  // median of beta/mu
  std::size_t groups_used = 0;
  std::size_t groups_skipped = 0;
};

/// Parses the TSV lemma map (base<TAB>modified...; '#' comment lines) and
/// fills token counts from `table`.
LemmaMap load_lemma_map(const std::filesystem::path& path, const TokenTable& table,
                        std::string source_corpus_id = {});
LemmaMap parse_lemma_map(std::istream& in, const TokenTable& table,
                         std::string source_corpus_id = {});

/// Median with the midpoint convention for even counts. `values` must be
/// non-empty.
double median(std::vector<double> values);

CalibrationFactors calibration_factors(const LemmaMap& map);

/// lambda_theta * types / ((1 - 1/lambda_t) * tokens).
double calibrated_ttr(double lambda_theta, double lambda_t, std::size_t type_count,
                      std::size_t token_count);
double calibrated_ttr(const CalibrationFactors& factors, std::size_t type_count,
                      std::size_t token_count);

nlohmann::ordered_json to_json(const CalibrationFactors& f);
nlohmann::ordered_json to_json(const LemmaMap& m);

}  // namespace orthosim
