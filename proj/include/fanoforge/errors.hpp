#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fanoforge {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: wrong dimensions, zero vectors, unparsable documents.
class InputError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its domain (invalid fan, non-pointed cone,
/// unknown center, unsupported formula, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// One or more named hypotheses of a checker failed. Each violation is kept
/// separately so callers can report them individually.
class HypothesisError : public PreconditionError {
 public:
  explicit HypothesisError(std::vector<std::string> violations)
      : PreconditionError(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) {
      if (!out.empty()) out += "; ";
      out += s;
    }
    return out;
  }

  std::vector<std::string> violations_;
};

/// Two exact computations that must agree did not. Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace fanoforge
