#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "orthosim/calib.hpp"
#include "orthosim/ingest.hpp"
#include "orthosim/ortho.hpp"
#include "orthosim/stats.hpp"
#include "orthosim/tokenize.hpp"

namespace orthosim::report {

inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr std::size_t kDefaultTopK = 20;

// ---- corpora --------------------------------------------------------------

struct LoadedCorpus {
  TokenTable table;
  OrthoProfile profile;
};

/// Reads, tokenizes and profiles one manifest entry.
LoadedCorpus load_corpus(const CorpusEntry& entry, const TokenizationPolicy& policy,
                         const ProfileOptions& options = {});

/// Loads several entries concurrently; results follow the order of `ids`.
std::vector<LoadedCorpus> load_corpora(const CorpusManifest& manifest,
                                       const std::vector<std::string>& ids,
                                       const TokenizationPolicy& policy,
                                       const ProfileOptions& options = {});

stats::Sample length_sample(const TokenTable& table);

/// Corpora x {a,e,i,o,u} table of final-vowel counts. With `normalize_rows`
/// each row is rescaled to percentages of that corpus's vowel-ending tokens.
stats::ContingencyTable vowel_contingency(std::span<const OrthoProfile> profiles,
                                          bool normalize_rows = false);

// ---- profile command ------------------------------------------------------

struct ProfileRequest {
  std::string corpus_id;
  std::size_t top_k = kDefaultTopK;
  std::string top_k_match;  // restrict top-k to types containing this
  bool exclude_numeric = false;
  std::optional<std::filesystem::path> lemma_map;
  std::optional<std::filesystem::path> annotations;
  TokenizationPolicy policy;
};

struct ProfileReport {
  OrthoProfile profile;
  std::vector<TopEntry> top;
  std::optional<LemmaMap> lemma_map;
  std::optional<CalibrationFactors> factors;
  std::optional<double> calibrated_ttr;
  std::string timestamp;
};

ProfileReport run_profile(const CorpusManifest& manifest, const ProfileRequest& request,
                          std::string timestamp);
nlohmann::ordered_json to_json(const ProfileReport& report);
/// Two-column metric,value CSV flattening the profile.
void write_profile_csv(std::ostream& out, const ProfileReport& report);

// ---- compare command ------------------------------------------------------

enum class ComparisonKind { word_length, vowel_contingency, pairwise_length };
std::string_view to_string(ComparisonKind k);

struct Comparison {
  ComparisonKind kind = ComparisonKind::word_length;
  std::vector<std::string> members;
  std::string name;
  bool normalize_rows = false;  // vowel-contingency only
};

struct ComparisonSpec {
  std::vector<std::string> corpus_ids;
  std::vector<Comparison> comparisons;
  double alpha = 0.05;
  TokenizationPolicy policy;
  bool exclude_numeric = false;
};

/// Validates the spec against the manifest: kinds, member counts and ids.
ComparisonSpec parse_comparison_spec(const nlohmann::json& j, const CorpusManifest& manifest);
ComparisonSpec load_comparison_spec(const std::filesystem::path& path,
                                    const CorpusManifest& manifest);

enum class PlotKind { cumulative_length, vowel_bars };
std::string_view to_string(PlotKind k);

struct PlotPoint {
  double x = 0.0;
  double y = 0.0;
  std::string label;
};

struct PlotSeries {
  std::string series_id;
  PlotKind kind = PlotKind::cumulative_length;
  std::vector<PlotPoint> points;  // x strictly increasing
};

/// Cumulative token count by word length (or the running fraction when
/// `relative` is set), one point per length present in the corpus.
PlotSeries cumulative_length_series(const OrthoProfile& profile, bool relative = false);
/// Final-vowel counts normalized to fractions of vowel-ending tokens.
PlotSeries vowel_bar_series(const OrthoProfile& profile);
std::vector<PlotSeries> emit_plot_series(std::span<const OrthoProfile> profiles, PlotKind kind,
                                         bool relative = false);
void write_plot_csv(std::ostream& out, std::span<const PlotSeries> series);

struct ComparisonOutcome {
  Comparison comparison;
  std::optional<stats::TestPlan> plan;  // word-length only
  std::optional<stats::ContingencyTable> table;
  std::optional<stats::TestResult> result;
  std::optional<std::string> error;
  bool failed() const noexcept { return error.has_value(); }
};

struct ComparisonReport {
  std::vector<OrthoProfile> profiles;
  std::vector<ComparisonOutcome> outcomes;
  std::vector<PlotSeries> plot_series;
  TokenizationPolicy policy;
  double alpha = 0.05;
  std::uint64_t seed = stats::kDefaultSeed;
  std::string timestamp;

  bool any_failed() const noexcept;
};

/// Runs every comparison; a failing comparison records its error and the
/// others still run.
ComparisonReport run_comparison(const CorpusManifest& manifest, const ComparisonSpec& spec,
                                std::uint64_t seed, std::string timestamp);
nlohmann::ordered_json to_json(const ComparisonReport& report);

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();
/// Shortest round-trip decimal form.
std::string format_number(double v);

}  // namespace orthosim::report
