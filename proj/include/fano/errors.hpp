#pragma once

#include <stdexcept>
#include <string>

namespace fano {

/// A mathematical precondition failed (singular cubic, zero class, line not
/// in the expected locus, ...). `reason()` is a stable machine-readable tag.
class MathError : public std::runtime_error {
 public:
  MathError(std::string reason, const std::string& what)
      : std::runtime_error(what), reason_(std::move(reason)) {}
  const std::string& reason() const { return reason_; }

 private:
  std::string reason_;
};

/// Malformed input: bad field spec, unparsable expression, wrong arity.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unparsable polynomial or vector text. `kind()` is a stable tag such as
/// non_homogeneous, unknown_variable, wrong_degree, malformed_rational.
class ParseError : public UsageError {
 public:
  ParseError(std::string kind, const std::string& what) : UsageError(what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

}  // namespace fano
