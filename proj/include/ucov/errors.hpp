#pragma once

#include <stdexcept>
#include <string>

#include "ucov/ast.hpp"

namespace ucov {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(Location loc, const std::string& message)
      : Error(to_string(loc) + ": " + message), location_(std::move(loc)), message_(message) {}

  [[nodiscard]] const Location& location() const { return location_; }
  [[nodiscard]] const std::string& message() const { return message_; }

 private:
  Location location_;
  std::string message_;
};

class DuplicateSymbol : public Error {
 public:
  using Error::Error;
};

class CyclicHierarchy : public Error {
 public:
  using Error::Error;
};

/// Two models, or a model and a footprint, that do not belong together.
class ModelMismatch : public Error {
 public:
  using Error::Error;
};

class UnknownSymbol : public Error {
 public:
  using Error::Error;
};

}  // namespace ucov
