#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "orthosim/ingest.hpp"

namespace orthosim {

enum class CaseMode { preserve, fold_lower };

/// How raw text becomes tokens. The policy is embedded in every report so a
/// run can be reproduced exactly.
///
/// Punctuation is either the Unicode P* categories (minus intra-word
/// characters) or an explicit code-point set; the two forms serialize as
/// the string "unicode:P" and as an array of one-character strings.
struct TokenizationPolicy {
  CaseMode case_mode = CaseMode::preserve;
  bool strip_edge_punctuation = true;
  bool unicode_punctuation = true;
  std::set<char32_t> punctuation_set;  // used when !unicode_punctuation
  bool keep_numeric_tokens = true;
  std::set<char32_t> intra_word_chars = {U'-', U'\''};

  bool is_punctuation(char32_t cp) const;
  /// Throws Error when punctuation_set and intra_word_chars overlap.
  void validate() const;

  bool operator==(const TokenizationPolicy&) const = default;
};

nlohmann::ordered_json to_json(const TokenizationPolicy& policy);
TokenizationPolicy policy_from_json(const nlohmann::json& j);

struct Token {
  std::string surface;
  std::size_t char_length = 0;
};

/// Token stream plus its type→count table. Immutable once built.
class TokenTable {
 public:
  TokenTable() = default;
  explicit TokenTable(std::vector<Token> tokens);
  /// Builds tokens from surfaces; char_length is computed.
  static TokenTable from_surfaces(const std::vector<std::string>& surfaces);

  const std::vector<Token>& tokens() const noexcept { return tokens_; }
  const std::map<std::string, std::size_t, std::less<>>& types() const noexcept { return types_; }
  std::size_t token_count() const noexcept { return tokens_.size(); }
  std::size_t type_count() const noexcept { return types_.size(); }
  bool empty() const noexcept { return tokens_.empty(); }

 private:
  std::vector<Token> tokens_;
  std::map<std::string, std::size_t, std::less<>> types_;
};

TokenTable tokenize(std::string_view text, const TokenizationPolicy& policy = {});
TokenTable tokenize(const RawDocument& doc, const TokenizationPolicy& policy = {});

std::size_t type_frequency(const TokenTable& table, std::string_view type);

/// True when every code point is a decimal digit.
bool is_numeric_token(std::string_view surface);

}  // namespace orthosim
