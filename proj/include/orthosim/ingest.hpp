#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace orthosim {

/// Declarative line filters. Cleaning only ever removes characters or
/// collapses whitespace runs to a single space.
struct CleaningOptions {
  bool strip_blank_lines = false;
  /// Lines starting with any of these literal prefixes are dropped.
  std::vector<std::string> strip_lines_matching;
  /// Collapse every whitespace run inside a line to one space and trim the
  /// line's ends.
  bool normalize_whitespace = false;

  bool enabled() const noexcept {
    return strip_blank_lines || normalize_whitespace || !strip_lines_matching.empty();
  }
};

struct CorpusEntry {
  std::string id;
  std::string label;
  std::string language_tag;
  std::string genre;
  /// Absolute or manifest-relative paths, already resolved.
  std::vector<std::filesystem::path> paths;
  CleaningOptions cleaning;
  std::string encoding = "utf-8";
};

struct CorpusManifest {
  std::filesystem::path source;
  std::vector<CorpusEntry> entries;

  /// nullptr when absent.
  const CorpusEntry* find(std::string_view id) const noexcept;
  const CorpusEntry& at(std::string_view id) const;
};

struct RawDocument {
  std::string corpus_id;
  std::string text;  // valid UTF-8
  std::vector<std::filesystem::path> source_paths;
  std::size_t byte_count = 0;  // UTF-8 bytes of `text`
};

/// Parses and validates a JSON manifest. Paths are resolved against the
/// manifest's directory and must exist.
CorpusManifest load_manifest(const std::filesystem::path& path);

/// Parses manifest JSON held in memory; `base_dir` resolves relative paths.
CorpusManifest parse_manifest(std::string_view json_text,
                              const std::filesystem::path& base_dir);

/// Reads, decodes and concatenates the entry's files (one '\n' between
/// files), then applies its cleaning options.
RawDocument read_document(const CorpusEntry& entry);

std::string clean_text(std::string_view text, const CleaningOptions& options);

}  // namespace orthosim
