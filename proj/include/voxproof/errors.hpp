#pragma once

#include <stdexcept>
#include <string>

namespace voxproof {

// Base for everything the tool treats as an input/configuration problem.
// Fault verdicts are ordinary return values, never exceptions; throwing one
// of these means the run cannot produce a verdict at all (CLI exit code 1).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad mu/epsilon/path-mode/step-budget style problems.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent scene description.
class SceneError : public Error {
 public:
  using Error::Error;
};

// G-code (or serialized instruction stream) that does not parse.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line) : Error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

// Syntactically fine G-code using a word this tool does not model.
class UnsupportedCommandError : public ParseError {
 public:
  using ParseError::ParseError;
};

// A motion (tool or fixtured stock) that leaves the workspace box. Raised at
// compile time: out-of-grid cells have no heap address to reason about.
class OutOfWorkspaceError : public Error {
 public:
  OutOfWorkspaceError(const std::string& what, int line) : Error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

// Heap store/load outside the current domain. Reaching this from the public
// entry points is a bug; it exists so unit tests can pin the boundary.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The exhaustive scheduler was asked to enumerate more than it is bounded for.
class OracleOverflowError : public Error {
 public:
  using Error::Error;
};

}  // namespace voxproof
