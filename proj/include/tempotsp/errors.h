#ifndef TEMPOTSP_ERRORS_H
#define TEMPOTSP_ERRORS_H

#include <stdexcept>
#include <string>

namespace tempotsp {

// Base for every error raised by the library. The CLI turns these into a
// machine-readable error record and a nonzero exit.
class Error : public std::runtime_error {
 public:
  Error(std::string type, const std::string& message)
      : std::runtime_error(message), type_(std::move(type)) {}

  const std::string& type() const { return type_; }

 private:
  std::string type_;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message) : Error("parse", message) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message)
      : Error("validation", message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error("io", message) {}
};

}  // namespace tempotsp

#endif  // TEMPOTSP_ERRORS_H
