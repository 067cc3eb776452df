#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hopkit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed document; `field` is a JSON-pointer-like path such as
// "keypoints[2].q".
class ParseError : public Error {
 public:
  ParseError(std::string field, const std::string& message, long index = -1)
      : Error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)),
        message_(message),
        index_(index) {}
  const std::string& field() const { return field_; }
  const std::string& message() const { return message_; }
  // Frame or entry index the error belongs to, -1 if none.
  long index() const { return index_; }

 private:
  std::string field_;
  std::string message_;
  long index_ = -1;
};

// One failed invariant; `index` is the grasp entry or frame it concerns
// (-1 when it applies to the whole document).
struct Issue {
  long index = -1;
  std::string message;
};

class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::vector<Issue> issues)
      : Error(what), issues_(std::move(issues)) {}
  const std::vector<Issue>& issues() const { return issues_; }

 private:
  std::vector<Issue> issues_;
};

// A synthesizer could not produce a valid clip (empty inputs, exhausted
// resample budget, boundary mismatch).
class SynthesisError : public Error {
 public:
  using Error::Error;
};

}  // namespace hopkit
