#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace pennant {

// Base for every error the library reports. Callers that only need to
// distinguish "bad input data" from programming errors can catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Corpus text could not be parsed.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Corpus was parseable but violates a corpus-level rule (duplicate ids).
class IngestError : public Error {
 public:
  using Error::Error;
};

class UnknownTermError : public Error {
 public:
  explicit UnknownTermError(std::string term)
      : Error("unknown term \"" + term + "\""), term_(std::move(term)) {}
  const std::string& term() const noexcept { return term_; }

 private:
  std::string term_;
};

// Index bytes are not a PNNT file at all.
class FormatError : public Error {
 public:
  using Error::Error;
};

class UnsupportedVersionError : public FormatError {
 public:
  UnsupportedVersionError(unsigned found, unsigned supported)
      : FormatError("unsupported index version " + std::to_string(found) +
                    " (this build reads version " + std::to_string(supported) + ")"),
        found_(found),
        supported_(supported) {}
  unsigned found() const noexcept { return found_; }
  unsigned supported() const noexcept { return supported_; }

 private:
  unsigned found_;
  unsigned supported_;
};

// Index bytes start correctly but are truncated or internally inconsistent.
class CorruptionError : public Error {
 public:
  using Error::Error;
};

// A weighting formula was evaluated outside its domain (zero counts, base <= 1).
class DomainError : public Error {
 public:
  using Error::Error;
};

// The effective N is smaller than some document frequency, so it cannot be
// the size of the database. Usually a bad user-supplied estimate.
class InvalidNError : public Error {
 public:
  using Error::Error;
};

// A parameter value is out of its allowed range.
class InvalidParameterError : public Error {
 public:
  InvalidParameterError(std::string name, const std::string& what)
      : Error(name + ": " + what), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

}  // namespace pennant
