#include <gtest/gtest.h>

#include "orthosim/error.hpp"
#include "orthosim/ingest.hpp"
#include "support.hpp"

using namespace orthosim;
using testing_support::TempDir;

namespace {

std::string one_entry(const std::string& paths, const std::string& extra = "") {
  return R"({"corpora":[{"id":"c","paths":)" + paths + extra + "}]}";
}

}  // namespace

TEST(Manifest, BundledRosterHasTwelveEntries) {
  const auto m = load_manifest(testing_support::fixture_dir() / "udhr" / "manifest.json");
  ASSERT_EQ(m.entries.size(), 12u);
  for (const auto& e : m.entries) {
    EXPECT_FALSE(e.id.empty());
    ASSERT_EQ(e.paths.size(), 1u);
    EXPECT_TRUE(std::filesystem::exists(e.paths[0]));
  }
  EXPECT_NE(m.find("zulu"), nullptr);
  EXPECT_EQ(m.find("klingon"), nullptr);
}

TEST(Manifest, DuplicateIdRejected) {
  TempDir dir;
  dir.write("a.txt", "a");
  const std::string json =
      R"({"corpora":[{"id":"zulu","paths":["a.txt"]},{"id":"zulu","paths":["a.txt"]}]})";
  try {
    parse_manifest(json, dir.path());
    FAIL() << "expected DuplicateId";
  } catch (const DuplicateId& e) {
    EXPECT_EQ(e.id(), "zulu");
  }
}

TEST(Manifest, MissingPathRejected) {
  TempDir dir;
  EXPECT_THROW(parse_manifest(one_entry(R"(["nope.txt"])"), dir.path()), MissingFile);
  EXPECT_THROW(load_manifest(dir.path() / "absent.json"), MissingFile);
}

TEST(Manifest, SyntaxErrorReportsPosition) {
  TempDir dir;
  try {
    parse_manifest("{\n  \"corpora\": [\n    {,\n", dir.path());
    FAIL() << "expected MalformedManifest";
  } catch (const MalformedManifest& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_GT(e.column(), 0u);
  }
}

TEST(Manifest, SchemaViolations) {
  TempDir dir;
  dir.write("a.txt", "a");
  EXPECT_THROW(parse_manifest("[]", dir.path()), MalformedManifest);
  EXPECT_THROW(parse_manifest(R"({"corpora":[{"paths":["a.txt"]}]})", dir.path()),
               MalformedManifest);
  EXPECT_THROW(parse_manifest(R"({"corpora":[{"id":"","paths":["a.txt"]}]})", dir.path()),
               MalformedManifest);
  EXPECT_THROW(parse_manifest(one_entry("[]"), dir.path()), MalformedManifest);
  EXPECT_THROW(parse_manifest(one_entry(R"(["a.txt"])", R"(,"cleaning":{"bogus":true})"),
                              dir.path()),
               MalformedManifest);
}

TEST(Manifest, RelativePathsResolveAgainstManifestDir) {
  TempDir dir;
  std::filesystem::create_directories(dir.path() / "sub");
  dir.write("sub/t.txt", "x");
  const auto path = dir.write("m.json", one_entry(R"(["sub/t.txt"])"));
  const auto m = load_manifest(path);
  EXPECT_EQ(m.entries[0].paths[0], dir.path() / "sub" / "t.txt");
}

TEST(ReadDocument, SingleFilePassesThrough) {
  TempDir dir;
  dir.write("a.txt", "abc\n");
  const auto m = parse_manifest(one_entry(R"(["a.txt"])"), dir.path());
  const auto doc = read_document(m.entries[0]);
  EXPECT_EQ(doc.text, "abc\n");
  EXPECT_EQ(doc.byte_count, 4u);
  EXPECT_EQ(doc.corpus_id, "c");
}

TEST(ReadDocument, FilesJoinedWithNewline) {
  TempDir dir;
  dir.write("a.txt", "a");
  dir.write("b.txt", "b");
  const auto m = parse_manifest(one_entry(R"(["a.txt","b.txt"])"), dir.path());
  EXPECT_EQ(read_document(m.entries[0]).text, "a\nb");
}

TEST(ReadDocument, StripLinesMatching) {
  TempDir dir;
  dir.write("a.txt", "Preamble\nkanti");
  const auto m = parse_manifest(
      one_entry(R"(["a.txt"])", R"(,"cleaning":{"strip_lines_matching":["Preamble"]})"),
      dir.path());
  EXPECT_EQ(read_document(m.entries[0]).text, "kanti");
}

TEST(ReadDocument, InvalidUtf8IsAnError) {
  TempDir dir;
  dir.write("bad.txt", std::string("ok \xC3\x28 more"));
  const auto m = parse_manifest(one_entry(R"(["bad.txt"])"), dir.path());
  try {
    read_document(m.entries[0]);
    FAIL() << "expected DecodeError";
  } catch (const DecodeError& e) {
    EXPECT_EQ(e.offset(), 3u);
  }
}

TEST(ReadDocument, LegacyEncodingIsConverted) {
  TempDir dir;
  dir.write("l1.txt", std::string("caf\xE9"));
  const auto m =
      parse_manifest(one_entry(R"(["l1.txt"])", R"(,"encoding":"ISO-8859-1")"), dir.path());
  EXPECT_EQ(read_document(m.entries[0]).text, "caf\xC3\xA9");
}

TEST(ReadDocument, ByteOrderMarkDropped) {
  TempDir dir;
  dir.write("bom.txt", "\xEF\xBB\xBFumuntu");
  const auto m = parse_manifest(one_entry(R"(["bom.txt"])"), dir.path());
  EXPECT_EQ(read_document(m.entries[0]).text, "umuntu");
}

TEST(CleanText, DisabledOptionsAreIdentity) {
  const std::string text = "  a  b\n\n c ";
  EXPECT_EQ(clean_text(text, {}), text);
}

TEST(CleanText, NormalizeAndStripBlank) {
  CleaningOptions opts;
  opts.normalize_whitespace = true;
  opts.strip_blank_lines = true;
  EXPECT_EQ(clean_text("  a \t b\n   \n c ", opts), "a b\nc");
}

TEST(CleanText, OnlyRemovesOrInsertsSpaces) {
  CleaningOptions opts;
  opts.normalize_whitespace = true;
  opts.strip_blank_lines = true;
  opts.strip_lines_matching = {"#"};
  const std::string input = "x\t\ty\n# note\n\n  Isigaba 1\r\numuntu  wonke\n";
  const std::string out = clean_text(input, opts);
  // Every non-space character of the output appears in order in the input.
  std::size_t pos = 0;
  for (char c : out) {
    if (c == ' ' || c == '\n') continue;
    pos = input.find(c, pos);
    ASSERT_NE(pos, std::string::npos) << "inserted character " << c;
    ++pos;
  }
  EXPECT_EQ(clean_text(out, opts), out);
}
