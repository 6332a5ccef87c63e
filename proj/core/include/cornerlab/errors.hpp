#pragma once

#include <stdexcept>
#include <string>

namespace cornerlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

class InvalidGrid : public Error {
 public:
  using Error::Error;
};

class InvalidBoundary : public Error {
 public:
  using Error::Error;
};

class RadiusOutOfRange : public Error {
 public:
  RadiusOutOfRange(const std::string& what, double radius)
      : Error(what), radius_(radius) {}
  double radius() const { return radius_; }

 private:
  double radius_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class DegenerateDenominator : public Error {
 public:
  DegenerateDenominator(const std::string& what, double radius)
      : Error(what), radius_(radius) {}
  double radius() const { return radius_; }

 private:
  double radius_;
};

class EmptyPositivity : public Error {
 public:
  using Error::Error;
};

class InvalidPair : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace cornerlab
