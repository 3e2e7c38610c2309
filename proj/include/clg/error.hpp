#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace clg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Bad record in a line-based resource file (lexicon, termbase, rule config).
class FormatError : public Error {
 public:
  enum class Kind { malformed, duplicate };

  FormatError(Kind kind, const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), kind_(kind), line_(line) {}

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

// Whole-termbase consistency violation detected after all records are read.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path);

}  // namespace clg
