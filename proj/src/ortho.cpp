#include "orthosim/ortho.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "orthosim/error.hpp"
#include "orthosim/unicode.hpp"

namespace orthosim {
namespace {

char32_t last_code_point(std::string_view s) {
  std::size_t start = s.size() - 1;
  while (start > 0 && (static_cast<unsigned char>(s[start]) & 0xC0) == 0x80) --start;
  std::size_t pos = start;
  return unicode::next(s, pos);
}

// Adjacent vowel pairs in one surface.
std::size_t vowel_pairs(std::string_view s) {
  std::size_t pairs = 0;
  bool prev_vowel = false;
  for (std::size_t pos = 0; pos < s.size();) {
    const bool v = is_vowel(unicode::next(s, pos));
    if (v && prev_vowel) ++pairs;
    prev_vowel = v;
  }
  return pairs;
}

double percent(std::size_t part, std::size_t whole) {
  return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

std::vector<TopEntry> rank_types(const TokenTable& table, std::size_t k,
                                 const Annotations* annotations,
                                 std::string_view needle) {
  if (k == 0) throw Error("top-k requires k >= 1");
  std::vector<std::pair<std::string_view, std::size_t>> rows;
  for (const auto& [type, count] : table.types()) {
    if (needle.empty() || type.find(needle) != std::string::npos) rows.emplace_back(type, count);
  }
  auto by_rank = [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  };
  const std::size_t n = std::min(k, rows.size());
  std::partial_sort(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(n), rows.end(), by_rank);

  std::vector<TopEntry> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    TopEntry e;
    e.type = std::string(rows[i].first);
    e.count = rows[i].second;
    e.share = static_cast<double>(e.count) / static_cast<double>(table.token_count());
    if (annotations) {
      if (auto it = annotations->find(e.type); it != annotations->end()) e.category = it->second;
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

double VowelStats::pct_consonant() const noexcept {
  return percent(consonant_ending_count, considered());
}

double VowelStats::pct_numeric() const noexcept {
  return percent(numeric_ending_count, considered());
}

bool is_vowel(char32_t cp) {
  switch (unicode::to_lower(cp)) {
    case U'a':
    case U'e':
    case U'i':
    case U'o':
    case U'u':
      return true;
    default:
      return false;
  }
}

WordLengthDistribution word_length_distribution(const TokenTable& table) {
  if (table.empty()) throw EmptyCorpus();
  WordLengthDistribution d;
  for (const auto& t : table.tokens()) ++d.counts[t.char_length];
  d.total = table.token_count();
  std::size_t running = 0;
  for (const auto& [length, count] : d.counts) {
    running += count;
    d.cumulative[length] = running;
    d.cumulative_relative[length] =
        static_cast<double>(running) / static_cast<double>(d.total);
  }
  d.min_length = d.counts.begin()->first;
  d.max_length = d.counts.rbegin()->first;
  return d;
}

double lexical_diversity(const TokenTable& table) {
  if (table.empty()) throw EmptyCorpus();
  return static_cast<double>(table.type_count()) / static_cast<double>(table.token_count());
}

VowelStats final_vowel_stats(const TokenTable& table, bool exclude_numeric) {
  VowelStats v;
  v.numeric_excluded = exclude_numeric;
  for (const auto& t : table.tokens()) {
    const char32_t last = last_code_point(t.surface);
    if (unicode::is_decimal_digit(last)) {
      if (exclude_numeric) continue;
      ++v.numeric_ending_count;
    } else if (is_vowel(last)) {
      ++v.vowel_ending_count;
      ++v.per_vowel[static_cast<char>(unicode::to_lower(last))];
    } else {
      ++v.consonant_ending_count;
    }
    if (const std::size_t pairs = vowel_pairs(t.surface); pairs > 0) {
      ++v.consecutive_vowel_tokens;
      v.consecutive_vowel_pairs += pairs;
    }
  }
  if (v.considered() == 0) throw EmptyCorpus();
  v.pct_final_vowel = percent(v.vowel_ending_count, v.considered());
  return v;
}

std::pair<std::size_t, std::size_t> consecutive_vowel_incidence(const TokenTable& table) {
  std::size_t tokens = 0;
  std::size_t pairs = 0;
  for (const auto& t : table.tokens()) {
    const std::size_t p = vowel_pairs(t.surface);
    tokens += p > 0 ? 1 : 0;
    pairs += p;
  }
  return {tokens, pairs};
}

std::size_t char_incidence(const TokenTable& table, char32_t ch) {
  const char32_t target = unicode::to_lower(ch);
  std::size_t n = 0;
  for (const auto& t : table.tokens()) {
    for (std::size_t pos = 0; pos < t.surface.size();) {
      if (unicode::to_lower(unicode::next(t.surface, pos)) == target) ++n;
    }
  }
  return n;
}

std::map<char32_t, std::size_t> char_incidence_all(const TokenTable& table) {
  std::map<char32_t, std::size_t> counts;
  for (const auto& t : table.tokens()) {
    for (std::size_t pos = 0; pos < t.surface.size();) {
      ++counts[unicode::to_lower(unicode::next(t.surface, pos))];
    }
  }
  return counts;
}

std::vector<TopEntry> top_k(const TokenTable& table, std::size_t k,
                            const Annotations* annotations) {
  return rank_types(table, k, annotations, {});
}

std::vector<TopEntry> top_k_matching(const TokenTable& table, std::size_t k,
                                     std::string_view needle,
                                     const Annotations* annotations) {
  return rank_types(table, k, annotations, needle);
}

OrthoProfile build_profile(std::string corpus_id, const TokenTable& table,
                           const TokenizationPolicy& policy,
                           const ProfileOptions& options) {
  OrthoProfile p;
  p.corpus_id = std::move(corpus_id);
  p.length_dist = word_length_distribution(table);
  p.vowel_stats = final_vowel_stats(table, options.exclude_numeric);
  p.char_incidence = char_incidence_all(table);
  p.lexical_diversity = lexical_diversity(table);
  p.token_count = table.token_count();
  p.type_count = table.type_count();
  p.policy_snapshot = policy;
  return p;
}

std::string_view to_string(WordCategory c) {
  switch (c) {
    case WordCategory::noun:
      return "noun";
    case WordCategory::verb:
      return "verb";
    case WordCategory::either:
      return "either";
    case WordCategory::other:
      break;
  }
  return "other";
}

std::optional<WordCategory> parse_category(std::string_view s) {
  for (auto c : {WordCategory::noun, WordCategory::verb, WordCategory::either, WordCategory::other}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

Annotations load_annotations(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingFile(path);
  Annotations out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": expected type<TAB>category");
    }
    const auto category = parse_category(std::string_view(line).substr(tab + 1));
    if (!category) {
      throw Error(path.string() + ":" + std::to_string(line_no) +
                  ": category must be noun, verb, either or other");
    }
    out[line.substr(0, tab)] = *category;
  }
  return out;
}

nlohmann::ordered_json to_json(const WordLengthDistribution& d) {
  nlohmann::ordered_json counts, cumulative, relative;
  for (const auto& [len, n] : d.counts) counts[std::to_string(len)] = n;
  for (const auto& [len, n] : d.cumulative) cumulative[std::to_string(len)] = n;
  for (const auto& [len, f] : d.cumulative_relative) relative[std::to_string(len)] = f;
  nlohmann::ordered_json j;
  j["counts"] = counts;
  j["cumulative"] = cumulative;
  j["cumulative_relative"] = relative;
  j["min_length"] = d.min_length;
  j["max_length"] = d.max_length;
  return j;
}

double report_percent(double pct) { return std::round(pct * 100.0) / 100.0; }

nlohmann::ordered_json to_json(const VowelStats& v) {
  nlohmann::ordered_json j;
  j["vowel_ending_count"] = v.vowel_ending_count;
  j["consonant_ending_count"] = v.consonant_ending_count;
  j["numeric_ending_count"] = v.numeric_ending_count;
  nlohmann::ordered_json per;
  for (const auto& [vowel, n] : v.per_vowel) per[std::string(1, vowel)] = n;
  j["per_vowel"] = per;
  j["pct_final_vowel"] = report_percent(v.pct_final_vowel);
  j["pct_consonant_ending"] = report_percent(v.pct_consonant());
  j["pct_numeric_ending"] = report_percent(v.pct_numeric());
  j["consecutive_vowel_tokens"] = v.consecutive_vowel_tokens;
  j["consecutive_vowel_pairs"] = v.consecutive_vowel_pairs;
  j["numeric_excluded"] = v.numeric_excluded;
  return j;
}

nlohmann::ordered_json to_json(const OrthoProfile& p) {
  nlohmann::ordered_json j;
  j["corpus_id"] = p.corpus_id;
  j["token_count"] = p.token_count;
  j["type_count"] = p.type_count;
  j["lexical_diversity"] = p.lexical_diversity;
  j["length_dist"] = to_json(p.length_dist);
  j["vowel_stats"] = to_json(p.vowel_stats);
  nlohmann::ordered_json chars = nlohmann::ordered_json::object();
  for (const auto& [cp, n] : p.char_incidence) chars[unicode::encode(cp)] = n;
  j["char_incidence"] = chars;
  j["policy_snapshot"] = to_json(p.policy_snapshot);
  return j;
}

nlohmann::ordered_json to_json(const std::vector<TopEntry>& rows) {
  auto arr = nlohmann::ordered_json::array();
  std::size_t rank = 0;
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["rank"] = ++rank;
    j["type"] = r.type;
    j["count"] = r.count;
    j["share"] = r.share;
    j["category"] = r.category ? nlohmann::ordered_json(std::string(to_string(*r.category)))
                               : nlohmann::ordered_json(nullptr);
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace orthosim
