#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace edgeprint {

/// Broad failure classes. The CLI maps these onto exit codes.
enum class ErrorKind {
  Io,              // file missing or unreadable
  Parse,           // malformed PGM or gallery file
  ConfigMismatch,  // features or galleries built with different configs
  Precondition,    // caller violated an operation's precondition
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error(ErrorKind::Precondition, what) {}
};

class ConfigMismatchError : public Error {
 public:
  explicit ConfigMismatchError(const std::string& what)
      : Error(ErrorKind::ConfigMismatch, what) {}
};

enum class PgmErrorCode {
  BadMagic,
  BadHeader,
  BadDimensions,
  BadMaxval,
  Truncated,
  BadSample,
};

/// PGM decode failure. offset is the byte position where decoding stopped.
class PgmParseError : public Error {
 public:
  PgmParseError(PgmErrorCode code, std::size_t offset, const std::string& what)
      : Error(ErrorKind::Parse,
              "pgm: " + what + " at byte " + std::to_string(offset)),
        code_(code),
        offset_(offset) {}

  PgmErrorCode code() const noexcept { return code_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  PgmErrorCode code_;
  std::size_t offset_;
};

enum class GalleryErrorCode {
  VersionMismatch,
  BadConfig,
  InconsistentFeatures,
  MalformedRow,
};

/// Gallery decode failure. line is 1-based.
class GalleryParseError : public Error {
 public:
  GalleryParseError(GalleryErrorCode code, std::size_t line,
                    const std::string& what)
      : Error(ErrorKind::Parse,
              "gallery line " + std::to_string(line) + ": " + what),
        code_(code),
        line_(line) {}

  GalleryErrorCode code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }

 private:
  GalleryErrorCode code_;
  std::size_t line_;
};

}  // namespace edgeprint
