#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sympidx {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// parameter outside the admissible domain (D(1), b2 == b3, KT in 2πZ, ...)
class DomainError : public Error {
 public:
  using Error::Error;
};

// counts that violate the block budget or list lengths
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

// a floor/sign that cannot be resolved under the precision budget
class PrecisionError : public Error {
 public:
  using Error::Error;
};

class AmbiguityError : public Error {
 public:
  AmbiguityError(const std::string& what, std::vector<std::string> candidates)
      : Error(what), candidates_(std::move(candidates)) {}
  const std::vector<std::string>& candidates() const { return candidates_; }

 private:
  std::vector<std::string> candidates_;
};

class NotACharacteristicError : public Error {
 public:
  using Error::Error;
};

class ParityError : public Error {
 public:
  using Error::Error;
};

class DegeneracyError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  SchemaError(std::string field, int line, const std::string& msg)
      : Error(format(field, line, msg)), field_(std::move(field)), line_(line) {}
  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  static std::string format(const std::string& f, int line, const std::string& msg) {
    std::string s = "field '" + f + "'";
    if (line > 0) s += " (line " + std::to_string(line) + ")";
    return s + ": " + msg;
  }
  std::string field_;
  int line_;
};

}  // namespace sympidx
