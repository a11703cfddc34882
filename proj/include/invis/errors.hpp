#pragma once

#include <stdexcept>
#include <string>

namespace invis {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateParabola : public Error {
 public:
  using Error::Error;
};

class InvalidSeed : public Error {
 public:
  using Error::Error;
};

/// A sequence value breaks one of the admissibility inequalities.
class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

class GeometryOverlap : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class TracerAnomaly : public Error {
 public:
  using Error::Error;
};

class CaseViolation : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

/// Malformed scene or report text. `path()` names the offending field.
class ParseError : public Error {
 public:
  ParseError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace invis
