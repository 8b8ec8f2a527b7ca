#include "orthosim/ingest.hpp"

#include <fstream>
#include <iterator>
#include <set>

#include <json.hpp>

#include "orthosim/error.hpp"
#include "orthosim/unicode.hpp"

namespace orthosim {
namespace {

using nlohmann::json;

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text,
                                                    std::size_t byte_offset) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte_offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

std::string require_string(const json& obj, const char* key, const std::string& where,
                           bool required = true) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) throw MalformedManifest(where + ": missing key \"" + key + "\"");
    return {};
  }
  if (!it->is_string()) {
    throw MalformedManifest(where + ": \"" + key + "\" must be a string");
  }
  return it->get<std::string>();
}

bool optional_flag(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) return false;
  if (!it->is_boolean()) throw MalformedManifest(where + ": \"" + key + "\" must be a boolean");
  return it->get<bool>();
}

CleaningOptions parse_cleaning(const json& obj, const std::string& where) {
  if (!obj.is_object()) throw MalformedManifest(where + ": \"cleaning\" must be an object");
  CleaningOptions opts;
  for (const auto& [key, value] : obj.items()) {
    if (key != "strip_blank_lines" && key != "strip_lines_matching" &&
        key != "normalize_whitespace") {
      throw MalformedManifest(where + ": unknown cleaning option \"" + key + "\"");
    }
  }
  opts.strip_blank_lines = optional_flag(obj, "strip_blank_lines", where);
  opts.normalize_whitespace = optional_flag(obj, "normalize_whitespace", where);
  if (auto it = obj.find("strip_lines_matching"); it != obj.end()) {
    if (!it->is_array()) {
      throw MalformedManifest(where + ": \"strip_lines_matching\" must be an array");
    }
    for (const auto& p : *it) {
      if (!p.is_string() || p.get<std::string>().empty()) {
        throw MalformedManifest(where + ": line prefixes must be non-empty strings");
      }
      opts.strip_lines_matching.push_back(p.get<std::string>());
    }
  }
  return opts;
}

std::string read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path.string());
  return bytes;
}

bool is_blank(std::string_view line) {
  for (std::size_t pos = 0; pos < line.size();) {
    if (!unicode::is_whitespace(unicode::next(line, pos))) return false;
  }
  return true;
}

std::string normalize_line(std::string_view line) {
  std::string out;
  out.reserve(line.size());
  bool pending_space = false;
  for (std::size_t pos = 0; pos < line.size();) {
    const std::size_t start = pos;
    const char32_t cp = unicode::next(line, pos);
    if (unicode::is_whitespace(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.append(line.substr(start, pos - start));
  }
  return out;
}

}  // namespace

const CorpusEntry* CorpusManifest::find(std::string_view id) const noexcept {
  for (const auto& e : entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

const CorpusEntry& CorpusManifest::at(std::string_view id) const {
  if (const auto* e = find(id)) return *e;
  throw Error("corpus id \"" + std::string(id) + "\" not in manifest");
}

CorpusManifest parse_manifest(std::string_view json_text,
                              const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    // nlohmann reports the offset one past the offending byte.
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    auto [line, column] = line_and_column(json_text, offset);
    throw MalformedManifest(e.what(), line, column);
  }

  if (!root.is_object()) throw MalformedManifest("top level must be an object");
  auto corpora = root.find("corpora");
  if (corpora == root.end() || !corpora->is_array()) {
    throw MalformedManifest("key \"corpora\" must be an array");
  }

  CorpusManifest manifest;
  std::set<std::string> seen;
  std::size_t index = 0;
  for (const auto& item : *corpora) {
    const std::string where = "corpora[" + std::to_string(index++) + "]";
    if (!item.is_object()) throw MalformedManifest(where + " must be an object");

    CorpusEntry entry;
    entry.id = require_string(item, "id", where);
    if (entry.id.empty()) throw MalformedManifest(where + ": \"id\" must be non-empty");
    if (!seen.insert(entry.id).second) throw DuplicateId(entry.id);
    entry.label = require_string(item, "label", where, false);
    if (entry.label.empty()) entry.label = entry.id;
    entry.language_tag = require_string(item, "language", where, false);
    entry.genre = require_string(item, "genre", where, false);
    if (auto enc = require_string(item, "encoding", where, false); !enc.empty()) {
      entry.encoding = enc;
    }

    auto paths = item.find("paths");
    if (paths == item.end() || !paths->is_array() || paths->empty()) {
      throw MalformedManifest(where + ": \"paths\" must be a non-empty array");
    }
    for (const auto& p : *paths) {
      if (!p.is_string()) throw MalformedManifest(where + ": paths must be strings");
      std::filesystem::path resolved(p.get<std::string>());
      if (resolved.is_relative()) resolved = base_dir / resolved;
      resolved = resolved.lexically_normal();
      std::error_code ec;
      if (!std::filesystem::is_regular_file(resolved, ec)) throw MissingFile(resolved);
      entry.paths.push_back(std::move(resolved));
    }
    if (auto c = item.find("cleaning"); c != item.end()) {
      entry.cleaning = parse_cleaning(*c, where);
    }
    manifest.entries.push_back(std::move(entry));
  }
  return manifest;
}

CorpusManifest load_manifest(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) throw MissingFile(path);
  const std::string text = read_bytes(path);
  auto manifest = parse_manifest(text, path.parent_path());
  manifest.source = path;
  return manifest;
}

std::string clean_text(std::string_view text, const CleaningOptions& options) {
  if (!options.enabled()) return std::string(text);

  std::vector<std::string> kept;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    start = end + 1;

    if (options.normalize_whitespace) line = normalize_line(line);
    if (options.strip_blank_lines && is_blank(line)) continue;
    bool drop = false;
    for (const auto& prefix : options.strip_lines_matching) {
      if (line.starts_with(prefix)) {
        drop = true;
        break;
      }
    }
    if (!drop) kept.push_back(std::move(line));
  }

  std::string out;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (i) out.push_back('\n');
    out += kept[i];
  }
  return out;
}

RawDocument read_document(const CorpusEntry& entry) {
  RawDocument doc;
  doc.corpus_id = entry.id;
  doc.source_paths = entry.paths;

  std::string joined;
  for (std::size_t i = 0; i < entry.paths.size(); ++i) {
    const auto& path = entry.paths[i];
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) throw MissingFile(path);
    if (i) joined.push_back('\n');
    joined += unicode::to_utf8(read_bytes(path), entry.encoding, path.string());
  }
  doc.text = clean_text(joined, entry.cleaning);
  doc.byte_count = doc.text.size();
  return doc;
}

}  // namespace orthosim
