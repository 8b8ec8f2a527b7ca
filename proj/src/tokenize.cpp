#include "orthosim/tokenize.hpp"

#include "orthosim/error.hpp"
#include "orthosim/unicode.hpp"

namespace orthosim {
namespace {

constexpr std::string_view kUnicodePunctuation = "unicode:P";

std::string single_char(const nlohmann::json& j, const char* field) {
  if (!j.is_string()) throw Error(std::string("policy: ") + field + " entries must be strings");
  const auto s = j.get<std::string>();
  unicode::validate_utf8(s, "policy");
  if (unicode::scalar_count(s) != 1) {
    throw Error(std::string("policy: ") + field + " entries must be single characters");
  }
  return s;
}

std::set<char32_t> char_set_from_json(const nlohmann::json& j, const char* field) {
  if (!j.is_array()) throw Error(std::string("policy: ") + field + " must be an array");
  std::set<char32_t> out;
  for (const auto& item : j) {
    const auto s = single_char(item, field);
    std::size_t pos = 0;
    out.insert(unicode::next(s, pos));
  }
  return out;
}

nlohmann::ordered_json char_set_to_json(const std::set<char32_t>& chars) {
  auto arr = nlohmann::ordered_json::array();
  for (char32_t c : chars) arr.push_back(unicode::encode(c));
  return arr;
}

// Strips policy punctuation from both ends of `word`.
std::string_view strip_edges(std::string_view word, const TokenizationPolicy& policy) {
  std::size_t begin = 0;
  while (begin < word.size()) {
    std::size_t pos = begin;
    if (!policy.is_punctuation(unicode::next(word, pos))) break;
    begin = pos;
  }
  std::size_t end = word.size();
  while (end > begin) {
    std::size_t start = end - 1;
    while (start > begin && (static_cast<unsigned char>(word[start]) & 0xC0) == 0x80) --start;
    std::size_t pos = start;
    if (!policy.is_punctuation(unicode::next(word, pos))) break;
    end = start;
  }
  return word.substr(begin, end - begin);
}

}  // namespace

bool TokenizationPolicy::is_punctuation(char32_t cp) const {
  if (intra_word_chars.contains(cp)) return false;
  return unicode_punctuation ? unicode::is_punctuation(cp) : punctuation_set.contains(cp);
}

void TokenizationPolicy::validate() const {
  for (char32_t c : punctuation_set) {
    if (intra_word_chars.contains(c)) {
      throw Error("policy: '" + unicode::encode(c) +
                  "' is both punctuation and an intra-word character");
    }
  }
}

nlohmann::ordered_json to_json(const TokenizationPolicy& policy) {
  nlohmann::ordered_json j;
  j["case_mode"] = policy.case_mode == CaseMode::preserve ? "preserve" : "fold-lower";
  j["strip_edge_punctuation"] = policy.strip_edge_punctuation;
  if (policy.unicode_punctuation) {
    j["punctuation_set"] = kUnicodePunctuation;
  } else {
    j["punctuation_set"] = char_set_to_json(policy.punctuation_set);
  }
  j["keep_numeric_tokens"] = policy.keep_numeric_tokens;
  j["intra_word_chars"] = char_set_to_json(policy.intra_word_chars);
  return j;
}

TokenizationPolicy policy_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("policy must be a JSON object");
  TokenizationPolicy p;
  for (const auto& [key, value] : j.items()) {
    if (key == "case_mode") {
      const auto mode = value.is_string() ? value.get<std::string>() : std::string();
      if (mode == "preserve") {
        p.case_mode = CaseMode::preserve;
      } else if (mode == "fold-lower") {
        p.case_mode = CaseMode::fold_lower;
      } else {
        throw Error("policy: case_mode must be \"preserve\" or \"fold-lower\"");
      }
    } else if (key == "strip_edge_punctuation" || key == "keep_numeric_tokens") {
      if (!value.is_boolean()) throw Error("policy: " + key + " must be a boolean");
      (key == "strip_edge_punctuation" ? p.strip_edge_punctuation : p.keep_numeric_tokens) =
          value.get<bool>();
    } else if (key == "punctuation_set") {
      if (value.is_string() && value.get<std::string>() == kUnicodePunctuation) {
        p.unicode_punctuation = true;
        p.punctuation_set.clear();
      } else {
        p.unicode_punctuation = false;
        p.punctuation_set = char_set_from_json(value, "punctuation_set");
      }
    } else if (key == "intra_word_chars") {
      p.intra_word_chars = char_set_from_json(value, "intra_word_chars");
    } else {
      throw Error("policy: unknown key \"" + key + "\"");
    }
  }
  p.validate();
  return p;
}

TokenTable::TokenTable(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
  for (const auto& t : tokens_) ++types_[t.surface];
}

TokenTable TokenTable::from_surfaces(const std::vector<std::string>& surfaces) {
  std::vector<Token> tokens;
  tokens.reserve(surfaces.size());
  for (const auto& s : surfaces) tokens.push_back({s, unicode::scalar_count(s)});
  return TokenTable(std::move(tokens));
}

bool is_numeric_token(std::string_view surface) {
  if (surface.empty()) return false;
  for (std::size_t pos = 0; pos < surface.size();) {
    if (!unicode::is_decimal_digit(unicode::next(surface, pos))) return false;
  }
  return true;
}

TokenTable tokenize(std::string_view text, const TokenizationPolicy& policy) {
  policy.validate();
  std::vector<Token> tokens;

  auto emit = [&](std::string_view word) {
    if (policy.strip_edge_punctuation) word = strip_edges(word, policy);
    if (word.empty()) return;
    if (!policy.keep_numeric_tokens && is_numeric_token(word)) return;
    std::string surface = policy.case_mode == CaseMode::fold_lower
                              ? unicode::to_lower(word)
                              : std::string(word);
    const std::size_t length = unicode::scalar_count(surface);
    tokens.push_back({std::move(surface), length});
  };

  std::size_t word_start = std::string_view::npos;
  for (std::size_t pos = 0; pos < text.size();) {
    const std::size_t start = pos;
    if (unicode::is_whitespace(unicode::next(text, pos))) {
      if (word_start != std::string_view::npos) {
        emit(text.substr(word_start, start - word_start));
        word_start = std::string_view::npos;
      }
    } else if (word_start == std::string_view::npos) {
      word_start = start;
    }
  }
  if (word_start != std::string_view::npos) emit(text.substr(word_start));
  return TokenTable(std::move(tokens));
}

TokenTable tokenize(const RawDocument& doc, const TokenizationPolicy& policy) {
  return tokenize(doc.text, policy);
}

std::size_t type_frequency(const TokenTable& table, std::string_view type) {
  const auto& types = table.types();
  auto it = types.find(type);
  return it == types.end() ? 0 : it->second;
}

}  // namespace orthosim
