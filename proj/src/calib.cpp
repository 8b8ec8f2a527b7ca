#include "orthosim/calib.hpp"

#include <algorithm>
#include <fstream>

#include "orthosim/error.hpp"
#include "orthosim/unicode.hpp"

namespace orthosim {
namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

}  // namespace

LemmaMap parse_lemma_map(std::istream& in, const TokenTable& table,
                         std::string source_corpus_id) {
  LemmaMap map;
  map.source_corpus_id = std::move(source_corpus_id);
  std::set<std::string> seen;
  std::set<std::string> missing;

  auto count_of = [&](const std::string& type) {
    const std::size_t n = type_frequency(table, type);
    if (n == 0) missing.insert(type);
    return n;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    try {
      unicode::validate_utf8(line, "lemma map");
    } catch (const DecodeError&) {
      throw MalformedMap("invalid UTF-8", line_no);
    }

    const auto fields = split_tabs(line);
    for (const auto& f : fields) {
      if (f.empty()) throw MalformedMap("empty field", line_no);
      for (std::size_t pos = 0; pos < f.size();) {
        if (unicode::is_whitespace(unicode::next(f, pos))) {
          throw MalformedMap("whitespace inside type \"" + f + "\"", line_no);
        }
      }
      if (!seen.insert(f).second) throw OverlappingGroups(f);
    }

    LemmaGroup g;
    g.base_type = fields.front();
    g.base_token_count = count_of(g.base_type);
    for (std::size_t i = 1; i < fields.size(); ++i) {
      g.modified_types.insert(fields[i]);
      g.modified_token_count += count_of(fields[i]);
    }
    map.groups.push_back(std::move(g));
  }
  if (in.bad()) throw IoError("failed reading lemma map");
  map.missing_types.assign(missing.begin(), missing.end());
  return map;
}

LemmaMap load_lemma_map(const std::filesystem::path& path, const TokenTable& table,
                        std::string source_corpus_id) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingFile(path);
  return parse_lemma_map(in, table, std::move(source_corpus_id));
}

double median(std::vector<double> values) {
  if (values.empty()) throw Error("median of an empty set");
  const auto mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

CalibrationFactors calibration_factors(const LemmaMap& map) {
  std::vector<double> token_ratios;
  std::vector<double> type_ratios;
  CalibrationFactors f;
  for (const auto& g : map.groups) {
    if (g.modified_token_count == 0 || g.mu() == 0) {
      ++f.groups_skipped;
      continue;
    }
    token_ratios.push_back(static_cast<double>(g.base_token_count) /
                           static_cast<double>(g.modified_token_count));
    type_ratios.push_back(static_cast<double>(g.beta) / static_cast<double>(g.mu()));
  }
  if (token_ratios.empty()) throw NoUsableGroups();
  f.groups_used = token_ratios.size();
  f.lambda_t = median(std::move(token_ratios));
  f.lambda_theta = median(std::move(type_ratios));
  return f;
}

double calibrated_ttr(double lambda_theta, double lambda_t, std::size_t type_count,
                      std::size_t token_count) {
  if (token_count == 0) throw EmptyCorpus();
  if (!(lambda_t > 1.0)) throw DegenerateLambdaT(lambda_t);
  return lambda_theta * static_cast<double>(type_count) /
         ((1.0 - 1.0 / lambda_t) * static_cast<double>(token_count));
}

double calibrated_ttr(const CalibrationFactors& factors, std::size_t type_count,
                      std::size_t token_count) {
  return calibrated_ttr(factors.lambda_theta, factors.lambda_t, type_count, token_count);
}

nlohmann::ordered_json to_json(const CalibrationFactors& f) {
  nlohmann::ordered_json j;
  j["lambda_t"] = f.lambda_t;
  j["lambda_theta"] = f.lambda_theta;
  j["groups_used"] = f.groups_used;
  j["groups_skipped"] = f.groups_skipped;
  return j;
}

nlohmann::ordered_json to_json(const LemmaMap& m) {
  nlohmann::ordered_json j;
  j["source_corpus_id"] = m.source_corpus_id;
  auto groups = nlohmann::ordered_json::array();
  for (const auto& g : m.groups) {
    nlohmann::ordered_json gj;
    gj["base_type"] = g.base_type;
    gj["base_token_count"] = g.base_token_count;
    gj["modified_types"] = g.modified_types;
    gj["modified_token_count"] = g.modified_token_count;
    gj["beta"] = g.beta;
    gj["mu"] = g.mu();
    groups.push_back(std::move(gj));
  }
  j["groups"] = groups;
  j["missing_types"] = m.missing_types;
  return j;
}

}  // namespace orthosim
