#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "orthosim/tokenize.hpp"

namespace orthosim {

struct WordLengthDistribution {
  std::map<std::size_t, std::size_t> counts;      // length -> tokens
  std::map<std::size_t, std::size_t> cumulative;  // length -> running total
  std::map<std::size_t, double> cumulative_relative;
  std::size_t min_length = 0;
  std::size_t max_length = 0;
  std::size_t total = 0;
};

/// Final-character classes and vowel-adjacency counts. Vowels are a, e, i,
/// o, u in either case; a final decimal digit makes a token "numeric";
/// everything else counts as consonant-ending.
struct VowelStats {
  std::size_t vowel_ending_count = 0;
  std::size_t consonant_ending_count = 0;
  std::size_t numeric_ending_count = 0;
  std::map<char, std::size_t> per_vowel = {{'a', 0}, {'e', 0}, {'i', 0}, {'o', 0}, {'u', 0}};
  double pct_final_vowel = 0.0;
  std::size_t consecutive_vowel_tokens = 0;
  std::size_t consecutive_vowel_pairs = 0;
  bool numeric_excluded = false;

  std::size_t considered() const noexcept {
    return vowel_ending_count + consonant_ending_count + numeric_ending_count;
  }
  double pct_consonant() const noexcept;
  double pct_numeric() const noexcept;
};

struct OrthoProfile {
  std::string corpus_id;
  WordLengthDistribution length_dist;
  VowelStats vowel_stats;
  std::map<char32_t, std::size_t> char_incidence;  // keyed by lowercase
  double lexical_diversity = 0.0;
  std::size_t token_count = 0;
  std::size_t type_count = 0;
  TokenizationPolicy policy_snapshot;
};

enum class WordCategory { noun, verb, either, other };

struct TopEntry {
  std::string type;
  std::size_t count = 0;
  double share = 0.0;  // count / token_count
  std::optional<WordCategory> category;
};

using Annotations = std::map<std::string, WordCategory, std::less<>>;

bool is_vowel(char32_t cp);

WordLengthDistribution word_length_distribution(const TokenTable& table);

/// Type/token ratio, unrounded.
double lexical_diversity(const TokenTable& table);

VowelStats final_vowel_stats(const TokenTable& table, bool exclude_numeric = false);

/// (tokens containing at least one adjacent vowel pair, total adjacent
/// pairs). Overlapping pairs count separately: "aaa" has two.
std::pair<std::size_t, std::size_t> consecutive_vowel_incidence(const TokenTable& table);

/// Occurrences of `ch` across all token surfaces; letters match
/// case-insensitively.
std::size_t char_incidence(const TokenTable& table, char32_t ch);

/// Every code point (lowercased) with its occurrence count.
std::map<char32_t, std::size_t> char_incidence_all(const TokenTable& table);

/// Most frequent types, ties broken by ascending byte order of the type.
std::vector<TopEntry> top_k(const TokenTable& table, std::size_t k,
                            const Annotations* annotations = nullptr);

/// top_k restricted to types containing `needle`; shares stay relative to
/// the whole table.
std::vector<TopEntry> top_k_matching(const TokenTable& table, std::size_t k,
                                     std::string_view needle,
                                     const Annotations* annotations = nullptr);

struct ProfileOptions {
  bool exclude_numeric = false;
};

OrthoProfile build_profile(std::string corpus_id, const TokenTable& table,
                           const TokenizationPolicy& policy,
                           const ProfileOptions& options = {});

/// Reads "type<TAB>category" lines; '#' starts a comment line.
Annotations load_annotations(const std::filesystem::path& path);
std::string_view to_string(WordCategory c);
std::optional<WordCategory> parse_category(std::string_view s);

/// Percentages appear in reports with two decimals; stored values are exact.
double report_percent(double pct);

nlohmann::ordered_json to_json(const WordLengthDistribution& d);
nlohmann::ordered_json to_json(const VowelStats& v);
nlohmann::ordered_json to_json(const OrthoProfile& p);
nlohmann::ordered_json to_json(const std::vector<TopEntry>& rows);

}  // namespace orthosim
