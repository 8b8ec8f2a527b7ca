#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>

namespace orthosim {

/// Base of every error raised by the toolkit. Each concrete type maps to one
/// named failure mode so callers can catch precisely what they handle.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- ingest ---------------------------------------------------------------

class MissingFile : public Error {
 public:
  explicit MissingFile(std::filesystem::path path)
      : Error("missing file: " + path.string()), path_(std::move(path)) {}
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

class DuplicateId : public Error {
 public:
  explicit DuplicateId(std::string id)
      : Error("duplicate corpus id: \"" + id + "\""), id_(std::move(id)) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

/// Manifest could not be parsed or does not follow the schema. Line and
/// column are 1-based; 0 means the position is not known (schema errors).
class MalformedManifest : public Error {
 public:
  MalformedManifest(const std::string& what, std::size_t line = 0,
                    std::size_t column = 0)
      : Error(line ? "malformed manifest at line " + std::to_string(line) +
                         ", column " + std::to_string(column) + ": " + what
                   : "malformed manifest: " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class DecodeError : public Error {
 public:
  DecodeError(const std::string& source, std::size_t offset)
      : Error("invalid byte sequence in " + source + " at byte offset " +
              std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// ---- ortho / calib --------------------------------------------------------

class EmptyCorpus : public Error {
 public:
  EmptyCorpus() : Error("corpus has no tokens") {}
  using Error::Error;
};

class MalformedMap : public Error {
 public:
  MalformedMap(const std::string& what, std::size_t line)
      : Error("malformed lemma map at line " + std::to_string(line) + ": " +
              what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class OverlappingGroups : public Error {
 public:
  explicit OverlappingGroups(std::string type)
      : Error("type \"" + type + "\" appears in more than one lemma group"),
        type_(std::move(type)) {}
  const std::string& type() const noexcept { return type_; }

 private:
  std::string type_;
};

class NoUsableGroups : public Error {
 public:
  NoUsableGroups()
      : Error("no lemma group has modified tokens; calibration undefined") {}
};

class DegenerateLambdaT : public Error {
 public:
  explicit DegenerateLambdaT(double lambda_t)
      : Error("token calibration factor must exceed 1, got " +
              std::to_string(lambda_t)),
        lambda_t_(lambda_t) {}
  double lambda_t() const noexcept { return lambda_t_; }

 private:
  double lambda_t_;
};

// ---- stats ----------------------------------------------------------------

class InvalidSample : public Error {
 public:
  using Error::Error;
};

class SampleTooSmall : public Error {
 public:
  using Error::Error;
};

class SampleTooLarge : public Error {
 public:
  using Error::Error;
};

class ZeroVariance : public Error {
 public:
  ZeroVariance() : Error("sample has zero variance") {}
};

class AllValuesTied : public Error {
 public:
  AllValuesTied() : Error("all observations are tied; rank test undefined") {}
};

class TooFewGroups : public Error {
 public:
  using Error::Error;
};

class InvalidTable : public Error {
 public:
  using Error::Error;
};

class ZeroMarginal : public Error {
 public:
  explicit ZeroMarginal(std::string label)
      : Error("contingency table has an all-zero " + label),
        label_(std::move(label)) {}
  const std::string& label() const noexcept { return label_; }

 private:
  std::string label_;
};

// ---- report ---------------------------------------------------------------

class InvalidComparisonSpec : public Error {
 public:
  using Error::Error;
};

}  // namespace orthosim
