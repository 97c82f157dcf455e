#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lvyscale {

/// A parameter outside the documented domain of a family or operation.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A slope fit whose input contains zeros or has no spread.
class DegenerateFit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation called outside its scope, e.g. a fine-scale limit for a
/// noise whose Blumenthal-Getoor index is zero.
class MisuseError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A rescaling that needs more source points than the path has.
class ExtentError : public std::out_of_range {
 public:
  ExtentError(const std::string& what, std::size_t required)
      : std::out_of_range(what), required_(required) {}
  std::size_t required() const { return required_; }

 private:
  std::size_t required_;
};

/// Arrays that do not live on the same grid.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace lvyscale
