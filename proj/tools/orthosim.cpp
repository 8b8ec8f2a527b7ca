#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "orthosim/error.hpp"
#include "orthosim/report.hpp"

namespace {

using namespace orthosim;

orthosim::TokenizationPolicy read_policy(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream in(path);
  if (!in) throw MissingFile(path);
  try {
    return policy_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw Error(path + ": " + e.what());
  }
}

// Writes to `path`, or stdout when it is empty or "-".
template <typename Fn>
void emit(const std::string& path, Fn&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write(out);
  if (!out) throw IoError("failed writing " + path);
}

std::vector<std::string> split_ids(const std::vector<std::string>& raw) {
  std::vector<std::string> ids;
  for (const auto& item : raw) {
    std::stringstream ss(item);
    std::string id;
    while (std::getline(ss, id, ',')) {
      if (!id.empty()) ids.push_back(id);
    }
  }
  return ids;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthographic profiles and corpus comparisons"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(report::kToolVersion));

  std::string manifest_path;
  std::string out_path;
  std::string policy_path;

  auto* profile = app.add_subcommand("profile", "Profile a single corpus");
  std::string corpus_id;
  std::size_t top_k = report::kDefaultTopK;
  std::string match;
  bool exclude_numeric = false;
  std::string lemma_map;
  std::string annotations;
  std::string format = "json";
  profile->add_option("--manifest", manifest_path, "Corpus manifest (JSON)")->required();
  profile->add_option("--corpus", corpus_id, "Corpus id")->required();
  profile->add_option("--top-k", top_k, "Number of frequent types to list");
  profile->add_option("--match", match, "Only list types containing this string");
  profile->add_flag("--exclude-numeric", exclude_numeric,
                    "Leave tokens ending in a digit out of final-character statistics");
  profile->add_option("--lemma-map", lemma_map, "Lemma group TSV for calibration");
  profile->add_option("--annotations", annotations, "type<TAB>category TSV");
  profile->add_option("--policy", policy_path, "Tokenization policy (JSON)");
  profile->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  profile->add_option("--out", out_path, "Output file (default stdout)");

  auto* compare = app.add_subcommand("compare", "Run statistical comparisons between corpora");
  std::string spec_path;
  std::optional<double> alpha;
  std::uint64_t seed = stats::kDefaultSeed;
  compare->add_option("--manifest", manifest_path, "Corpus manifest (JSON)")->required();
  compare->add_option("--spec", spec_path, "Comparison spec (JSON)")->required();
  compare->add_option("--alpha", alpha, "Significance level (overrides the spec)");
  compare->add_option("--seed", seed, "Seed for normality-test subsampling");
  compare->add_option("--out", out_path, "Output file (default stdout)");

  auto* plot = app.add_subcommand("plot", "Emit plot series as CSV");
  std::vector<std::string> corpora_raw;
  std::string kind;
  bool relative = false;
  plot->add_option("--manifest", manifest_path, "Corpus manifest (JSON)")->required();
  plot->add_option("--corpora", corpora_raw, "Comma-separated corpus ids")->required();
  plot->add_option("--kind", kind, "cfd or vowels")
      ->required()
      ->check(CLI::IsMember({"cfd", "vowels"}));
  plot->add_flag("--relative", relative, "Cumulative fractions instead of counts");
  plot->add_option("--policy", policy_path, "Tokenization policy (JSON)");
  plot->add_flag("--exclude-numeric", exclude_numeric,
                 "Leave tokens ending in a digit out of final-character statistics");
  plot->add_option("--out", out_path, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const CorpusManifest manifest = load_manifest(manifest_path);

    if (*profile) {
      report::ProfileRequest request;
      request.corpus_id = corpus_id;
      request.top_k = top_k;
      request.top_k_match = match;
      request.exclude_numeric = exclude_numeric;
      if (!lemma_map.empty()) request.lemma_map = lemma_map;
      if (!annotations.empty()) request.annotations = annotations;
      request.policy = read_policy(policy_path);
      const auto result = report::run_profile(manifest, request, report::utc_timestamp());
      emit(out_path, [&](std::ostream& os) {
        if (format == "csv") {
          report::write_profile_csv(os, result);
        } else {
          os << report::to_json(result).dump(2) << '\n';
        }
      });
      return 0;
    }

    if (*compare) {
      report::ComparisonSpec spec = report::load_comparison_spec(spec_path, manifest);
      if (alpha) {
        if (!(*alpha > 0.0 && *alpha < 1.0)) throw InvalidComparisonSpec("alpha must lie in (0, 1)");
        spec.alpha = *alpha;
      }
      if (const char* env = std::getenv("ORTHOSIM_SEED"); env && *env) {
        try {
          std::size_t used = 0;
          seed = std::stoull(env, &used);
          if (env[used] != '\0') throw std::invalid_argument(env);
        } catch (const std::exception&) {
          std::cerr << "error: ORTHOSIM_SEED must be a nonnegative integer\n";
          return 2;
        }
      }
      const auto result = report::run_comparison(manifest, spec, seed, report::utc_timestamp());
      emit(out_path, [&](std::ostream& os) { os << report::to_json(result).dump(2) << '\n'; });
      for (const auto& o : result.outcomes) {
        if (o.failed()) std::cerr << "error: " << o.comparison.name << ": " << *o.error << '\n';
      }
      return result.any_failed() ? 1 : 0;
    }

    const std::vector<std::string> ids = split_ids(corpora_raw);
    if (ids.empty()) {
      std::cerr << "error: --corpora lists no ids\n";
      return 2;
    }
    ProfileOptions options;
    options.exclude_numeric = exclude_numeric;
    const auto corpora = report::load_corpora(manifest, ids, read_policy(policy_path), options);
    std::vector<OrthoProfile> profiles;
    for (const auto& c : corpora) profiles.push_back(c.profile);
    const auto series = report::emit_plot_series(
        profiles,
        kind == "cfd" ? report::PlotKind::cumulative_length : report::PlotKind::vowel_bars,
        relative);
    emit(out_path, [&](std::ostream& os) { report::write_plot_csv(os, series); });
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
