#include "orthosim/report.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <future>
#include <set>

#include "orthosim/error.hpp"
#include "orthosim/unicode.hpp"

namespace orthosim::report {
namespace {

using nlohmann::ordered_json;

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::vector<std::string> string_list(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array()) throw InvalidComparisonSpec(where + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& item : j) {
    if (!item.is_string()) throw InvalidComparisonSpec(where + " must be an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

ComparisonKind parse_kind(const nlohmann::json& j, const std::string& where) {
  const std::string s = j.is_string() ? j.get<std::string>() : std::string();
  if (s == "word-length") return ComparisonKind::word_length;
  if (s == "vowel-contingency") return ComparisonKind::vowel_contingency;
  if (s == "pairwise-length") return ComparisonKind::pairwise_length;
  throw InvalidComparisonSpec(where +
                              ": kind must be word-length, vowel-contingency or pairwise-length");
}

std::string default_name(const Comparison& c) {
  std::string name(to_string(c.kind));
  name += ":";
  for (std::size_t i = 0; i < c.members.size(); ++i) name += (i ? "," : "") + c.members[i];
  return name;
}

ordered_json table_json(const stats::ContingencyTable& t) {
  ordered_json j;
  j["row_labels"] = t.row_labels;
  j["col_labels"] = t.col_labels;
  j["counts"] = t.counts;
  return j;
}

std::size_t index_of(const std::vector<std::string>& ids, const std::string& id) {
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] == id) return i;
  }
  throw Error("corpus \"" + id + "\" was not loaded");
}

}  // namespace

std::string_view to_string(ComparisonKind k) {
  switch (k) {
    case ComparisonKind::word_length:
      return "word-length";
    case ComparisonKind::vowel_contingency:
      return "vowel-contingency";
    case ComparisonKind::pairwise_length:
      break;
  }
  return "pairwise-length";
}

std::string_view to_string(PlotKind k) {
  return k == PlotKind::cumulative_length ? "cumulative-length" : "vowel-bars";
}

std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// ---- corpora --------------------------------------------------------------

LoadedCorpus load_corpus(const CorpusEntry& entry, const TokenizationPolicy& policy,
                         const ProfileOptions& options) {
  LoadedCorpus c;
  c.table = tokenize(read_document(entry), policy);
  c.profile = build_profile(entry.id, c.table, policy, options);
  return c;
}

std::vector<LoadedCorpus> load_corpora(const CorpusManifest& manifest,
                                       const std::vector<std::string>& ids,
                                       const TokenizationPolicy& policy,
                                       const ProfileOptions& options) {
  std::vector<std::future<LoadedCorpus>> pending;
  pending.reserve(ids.size());
  for (const auto& id : ids) {
    const CorpusEntry& entry = manifest.at(id);
    pending.push_back(std::async(std::launch::async, [&entry, &policy, options] {
      return load_corpus(entry, policy, options);
    }));
  }
  std::vector<LoadedCorpus> out;
  out.reserve(ids.size());
  for (auto& f : pending) out.push_back(f.get());
  return out;
}

stats::Sample length_sample(const TokenTable& table) {
  if (table.empty()) throw EmptyCorpus();
  std::vector<double> lengths;
  lengths.reserve(table.token_count());
  for (const auto& t : table.tokens()) lengths.push_back(static_cast<double>(t.char_length));
  return stats::Sample(std::move(lengths));
}

stats::ContingencyTable vowel_contingency(std::span<const OrthoProfile> profiles,
                                          bool normalize_rows) {
  stats::ContingencyTable t;
  t.col_labels = {"a", "e", "i", "o", "u"};
  for (const auto& p : profiles) {
    std::vector<double> row;
    for (char v : {'a', 'e', 'i', 'o', 'u'}) {
      row.push_back(static_cast<double>(p.vowel_stats.per_vowel.at(v)));
    }
    if (normalize_rows && p.vowel_stats.vowel_ending_count > 0) {
      const auto total = static_cast<double>(p.vowel_stats.vowel_ending_count);
      for (double& x : row) x = 100.0 * x / total;
    }
    t.counts.push_back(std::move(row));
    t.row_labels.push_back(p.corpus_id);
  }
  return t;
}

// ---- profile command ------------------------------------------------------

ProfileReport run_profile(const CorpusManifest& manifest, const ProfileRequest& request,
                          std::string timestamp) {
  const CorpusEntry& entry = manifest.at(request.corpus_id);
  ProfileOptions options;
  options.exclude_numeric = request.exclude_numeric;
  LoadedCorpus corpus = load_corpus(entry, request.policy, options);

  ProfileReport report;
  report.timestamp = std::move(timestamp);
  std::optional<Annotations> annotations;
  if (request.annotations) annotations = load_annotations(*request.annotations);
  const Annotations* ann = annotations ? &*annotations : nullptr;
  report.top = request.top_k_match.empty()
                   ? top_k(corpus.table, request.top_k, ann)
                   : top_k_matching(corpus.table, request.top_k, request.top_k_match, ann);

  if (request.lemma_map) {
    report.lemma_map = load_lemma_map(*request.lemma_map, corpus.table, entry.id);
    report.factors = calibration_factors(*report.lemma_map);
    report.calibrated_ttr =
        calibrated_ttr(*report.factors, corpus.table.type_count(), corpus.table.token_count());
  }
  report.profile = std::move(corpus.profile);
  return report;
}

ordered_json to_json(const ProfileReport& report) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["tool_version"] = std::string(kToolVersion);
  j["timestamp"] = report.timestamp;
  j["profile"] = to_json(report.profile);
  j["top_k"] = to_json(report.top);
  if (report.lemma_map) {
    ordered_json c;
    c["lemma_map"] = to_json(*report.lemma_map);
    c["factors"] = to_json(*report.factors);
    c["calibrated_ttr"] = *report.calibrated_ttr;
    j["calibration"] = c;
  }
  return j;
}

void write_profile_csv(std::ostream& out, const ProfileReport& report) {
  const auto& p = report.profile;
  const auto& v = p.vowel_stats;
  auto row = [&out](std::string_view metric, const std::string& value) {
    out << csv_field(metric) << ',' << csv_field(value) << '\n';
  };
  auto num = [](std::size_t n) { return std::to_string(n); };
  out << "metric,value\n";
  row("corpus_id", p.corpus_id);
  row("token_count", num(p.token_count));
  row("type_count", num(p.type_count));
  row("lexical_diversity", format_number(p.lexical_diversity));
  row("min_length", num(p.length_dist.min_length));
  row("max_length", num(p.length_dist.max_length));
  for (const auto& [len, n] : p.length_dist.counts) row("length_count." + num(len), num(n));
  row("vowel_ending_count", num(v.vowel_ending_count));
  row("consonant_ending_count", num(v.consonant_ending_count));
  row("numeric_ending_count", num(v.numeric_ending_count));
  for (const auto& [vowel, n] : v.per_vowel) row(std::string("per_vowel.") + vowel, num(n));
  row("pct_final_vowel", format_number(report_percent(v.pct_final_vowel)));
  row("pct_consonant_ending", format_number(report_percent(v.pct_consonant())));
  row("pct_numeric_ending", format_number(report_percent(v.pct_numeric())));
  row("consecutive_vowel_tokens", num(v.consecutive_vowel_tokens));
  row("consecutive_vowel_pairs", num(v.consecutive_vowel_pairs));
  for (const auto& [cp, n] : p.char_incidence) row("char." + unicode::encode(cp), num(n));
  std::size_t rank = 0;
  for (const auto& t : report.top) {
    const std::string prefix = "top." + num(++rank) + ".";
    row(prefix + "type", t.type);
    row(prefix + "count", num(t.count));
    row(prefix + "share", format_number(t.share));
    if (t.category) row(prefix + "category", std::string(to_string(*t.category)));
  }
  if (report.factors) {
    row("lambda_t", format_number(report.factors->lambda_t));
    row("lambda_theta", format_number(report.factors->lambda_theta));
    row("calibrated_ttr", format_number(*report.calibrated_ttr));
  }
  row("policy", to_json(p.policy_snapshot).dump());
}

// ---- compare command ------------------------------------------------------

ComparisonSpec parse_comparison_spec(const nlohmann::json& j, const CorpusManifest& manifest) {
  if (!j.is_object()) throw InvalidComparisonSpec("comparison spec must be a JSON object");
  ComparisonSpec spec;
  for (const auto& [key, value] : j.items()) {
    if (key == "corpora" || key == "corpus_ids") {
      spec.corpus_ids = string_list(value, key);
    } else if (key == "alpha") {
      if (!value.is_number()) throw InvalidComparisonSpec("alpha must be a number");
      spec.alpha = value.get<double>();
    } else if (key == "policy") {
      spec.policy = policy_from_json(value);
    } else if (key == "exclude_numeric") {
      if (!value.is_boolean()) throw InvalidComparisonSpec("exclude_numeric must be a boolean");
      spec.exclude_numeric = value.get<bool>();
    } else if (key == "comparisons") {
      if (!value.is_array()) throw InvalidComparisonSpec("comparisons must be an array");
      std::size_t index = 0;
      for (const auto& item : value) {
        const std::string where = "comparisons[" + std::to_string(index++) + "]";
        if (!item.is_object()) throw InvalidComparisonSpec(where + " must be an object");
        Comparison c;
        c.kind = parse_kind(item.value("kind", nlohmann::json()), where);
        c.members = string_list(item.value("members", nlohmann::json()), where + ".members");
        if (auto n = item.find("name"); n != item.end() && n->is_string()) c.name = n->get<std::string>();
        if (auto n = item.find("normalize_rows"); n != item.end()) {
          if (!n->is_boolean()) throw InvalidComparisonSpec(where + ".normalize_rows must be a boolean");
          c.normalize_rows = n->get<bool>();
        }
        if (c.name.empty()) c.name = default_name(c);
        spec.comparisons.push_back(std::move(c));
      }
    } else {
      throw InvalidComparisonSpec("unknown key \"" + key + "\"");
    }
  }
  if (!(spec.alpha > 0.0 && spec.alpha < 1.0)) throw InvalidComparisonSpec("alpha must lie in (0, 1)");

  std::set<std::string> listed(spec.corpus_ids.begin(), spec.corpus_ids.end());
  if (listed.size() != spec.corpus_ids.size()) {
    throw InvalidComparisonSpec("corpus ids must not repeat");
  }
  for (const auto& c : spec.comparisons) {
    const std::size_t need = c.kind == ComparisonKind::pairwise_length ? 2 : 0;
    if (need && c.members.size() != need) {
      throw InvalidComparisonSpec(c.name + ": pairwise-length needs exactly two members");
    }
    if (c.members.size() < 2) throw InvalidComparisonSpec(c.name + ": needs at least two members");
    std::set<std::string> unique(c.members.begin(), c.members.end());
    if (unique.size() != c.members.size()) {
      throw InvalidComparisonSpec(c.name + ": members must be distinct");
    }
    for (const auto& m : c.members) {
      if (!listed.contains(m)) {
        spec.corpus_ids.push_back(m);
        listed.insert(m);
      }
    }
  }
  for (const auto& id : spec.corpus_ids) {
    if (!manifest.find(id)) throw InvalidComparisonSpec("corpus \"" + id + "\" is not in the manifest");
  }
  return spec;
}

ComparisonSpec load_comparison_spec(const std::filesystem::path& path,
                                    const CorpusManifest& manifest) {
  std::ifstream in(path);
  if (!in) throw MissingFile(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidComparisonSpec(path.string() + ": " + e.what());
  }
  return parse_comparison_spec(j, manifest);
}

PlotSeries cumulative_length_series(const OrthoProfile& profile, bool relative) {
  PlotSeries s;
  s.series_id = profile.corpus_id;
  s.kind = PlotKind::cumulative_length;
  for (const auto& [len, running] : profile.length_dist.cumulative) {
    const double y = relative ? profile.length_dist.cumulative_relative.at(len)
                              : static_cast<double>(running);
    s.points.push_back({static_cast<double>(len), y, std::to_string(len)});
  }
  return s;
}

PlotSeries vowel_bar_series(const OrthoProfile& profile) {
  PlotSeries s;
  s.series_id = profile.corpus_id;
  s.kind = PlotKind::vowel_bars;
  const auto total = static_cast<double>(profile.vowel_stats.vowel_ending_count);
  double x = 0.0;
  for (const auto& [vowel, n] : profile.vowel_stats.per_vowel) {
    const double y = total > 0.0 ? static_cast<double>(n) / total : 0.0;
    s.points.push_back({x += 1.0, y, std::string(1, vowel)});
  }
  return s;
}

std::vector<PlotSeries> emit_plot_series(std::span<const OrthoProfile> profiles, PlotKind kind,
                                         bool relative) {
  std::vector<PlotSeries> out;
  for (const auto& p : profiles) {
    out.push_back(kind == PlotKind::cumulative_length ? cumulative_length_series(p, relative)
                                                      : vowel_bar_series(p));
  }
  return out;
}

void write_plot_csv(std::ostream& out, std::span<const PlotSeries> series) {
  out << "series_id,kind,x,label,y\n";
  for (const auto& s : series) {
    for (const auto& pt : s.points) {
      out << csv_field(s.series_id) << ',' << to_string(s.kind) << ',' << format_number(pt.x)
          << ',' << csv_field(pt.label) << ',' << format_number(pt.y) << '\n';
    }
  }
}

bool ComparisonReport::any_failed() const noexcept {
  for (const auto& o : outcomes) {
    if (o.failed()) return true;
  }
  return false;
}

ComparisonReport run_comparison(const CorpusManifest& manifest, const ComparisonSpec& spec,
                                std::uint64_t seed, std::string timestamp) {
  ComparisonReport report;
  report.policy = spec.policy;
  report.alpha = spec.alpha;
  report.seed = seed;
  report.timestamp = std::move(timestamp);

  ProfileOptions options;
  options.exclude_numeric = spec.exclude_numeric;
  std::vector<LoadedCorpus> corpora = load_corpora(manifest, spec.corpus_ids, spec.policy, options);

  for (const auto& c : spec.comparisons) {
    ComparisonOutcome outcome;
    outcome.comparison = c;
    try {
      switch (c.kind) {
        case ComparisonKind::word_length: {
          std::vector<stats::Sample> samples;
          for (const auto& m : c.members) {
            samples.push_back(length_sample(corpora[index_of(spec.corpus_ids, m)].table));
          }
          outcome.plan = stats::choose_tests(samples, spec.alpha, seed);
          outcome.result = outcome.plan->result;
          break;
        }
        case ComparisonKind::pairwise_length: {
          const auto a = length_sample(corpora[index_of(spec.corpus_ids, c.members[0])].table);
          const auto b = length_sample(corpora[index_of(spec.corpus_ids, c.members[1])].table);
          outcome.result = stats::mann_whitney(a, b);
          break;
        }
        case ComparisonKind::vowel_contingency: {
          std::vector<OrthoProfile> members;
          for (const auto& m : c.members) {
            members.push_back(corpora[index_of(spec.corpus_ids, m)].profile);
          }
          outcome.table = vowel_contingency(members, c.normalize_rows);
          outcome.result = stats::chi_square_independence(*outcome.table);
          if (c.normalize_rows) outcome.result->notes.emplace_back("rows normalized to percentages");
          break;
        }
      }
    } catch (const Error& e) {
      outcome.error = e.what();
    }
    report.outcomes.push_back(std::move(outcome));
  }

  for (auto& c : corpora) report.profiles.push_back(std::move(c.profile));
  for (const auto& p : report.profiles) {
    report.plot_series.push_back(cumulative_length_series(p));
    report.plot_series.push_back(vowel_bar_series(p));
  }
  return report;
}

ordered_json to_json(const ComparisonReport& report) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["tool_version"] = std::string(kToolVersion);
  j["timestamp"] = report.timestamp;
  j["policy_snapshot"] = to_json(report.policy);
  j["alpha"] = report.alpha;
  j["seed"] = report.seed;

  auto profiles = ordered_json::array();
  for (const auto& p : report.profiles) profiles.push_back(to_json(p));
  j["profiles"] = profiles;

  auto results = ordered_json::array();
  for (const auto& o : report.outcomes) {
    ordered_json r;
    r["name"] = o.comparison.name;
    r["kind"] = std::string(to_string(o.comparison.kind));
    r["members"] = o.comparison.members;
    r["status"] = o.failed() ? "failed" : "ok";
    if (o.error) r["error"] = *o.error;
    if (o.plan) r["plan"] = stats::to_json(*o.plan);
    if (o.table) r["contingency_table"] = table_json(*o.table);
    if (o.result) {
      r["result"] = stats::to_json(*o.result);
      r["reject_null"] = o.result->p_value < report.alpha;
    }
    results.push_back(std::move(r));
  }
  j["test_results"] = results;

  auto series = ordered_json::array();
  for (const auto& s : report.plot_series) {
    ordered_json sj;
    sj["series_id"] = s.series_id;
    sj["kind"] = std::string(to_string(s.kind));
    auto pts = ordered_json::array();
    for (const auto& pt : s.points) pts.push_back(ordered_json::array({pt.x, pt.y}));
    sj["points"] = pts;
    series.push_back(std::move(sj));
  }
  j["plot_series"] = series;
  return j;
}

}  // namespace orthosim::report
